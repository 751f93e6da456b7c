// Command-line front end; all real work lives in the headers so tests can
// call it in process. This file only parses flags, reads files and prints.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lieenv/commands.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lieenv::UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int emit(const lieenv::CommandResult& res, const std::string& format) {
  if (!res.error.empty()) std::cerr << "error: " << res.error << "\n";
  if (!res.report.command.empty()) {
    if (format == "json")
      std::cout << res.report.to_json().dump(2) << "\n";
    else
      std::cout << res.report.to_text();
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact weight spaces, centers and stability in enveloping algebras "
               "of Lie algebras over finite fields"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string file, ideal, space = "L", a_src, b_src;
  std::vector<std::string> complement;
  std::uint32_t degree = 0;
  std::uint32_t rep_degree = 3;
  bool field_ext = false;
  std::uint64_t seed = 1;
  std::size_t samples = 100;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", file, "algebra definition file")->required();
  };

  CLI::App* validate = app.add_subcommand("validate", "check that a file defines a Lie algebra");
  add_file(validate);
  add_output(validate);

  CLI::App* series = app.add_subcommand("series", "derived and lower central series");
  add_file(series);
  add_output(series);

  CLI::App* weights = app.add_subcommand("weights", "weight spaces of an ideal's enveloping algebra");
  add_file(weights);
  weights->add_option("--ideal", ideal, "name of the ideal")->required();
  weights->add_option("--degree", degree, "window degree")->required();
  add_output(weights);

  CLI::App* center = app.add_subcommand("center", "weight-zero space of an ideal's enveloping algebra");
  add_file(center);
  center->add_option("--ideal", ideal, "name of the ideal")->required();
  center->add_option("--degree", degree, "window degree")->required();
  add_output(center);

  CLI::App* stability = app.add_subcommand("stability", "stability of weight spaces under a complement");
  add_file(stability);
  stability->add_option("--ideal", ideal, "name of the ideal")->required();
  stability->add_option("--degree", degree, "window degree")->required();
  stability->add_option("--complement", complement,
                        "complement vector (name or linear expression); repeatable, "
                        "default: completion by basis vectors");
  add_output(stability);

  CLI::App* check = app.add_subcommand("check-product", "semi-invariance of two elements and their product");
  add_file(check);
  check->add_option("--a", a_src, "first factor (element name or expression)")->required();
  check->add_option("--b", b_src, "second factor (element name or expression)")->required();
  check->add_option("--space", space, "subspace the action is taken over (default L)");
  add_output(check);

  CLI::App* flag = app.add_subcommand("flag", "chain of ideals with one-dimensional steps, if any");
  add_file(flag);
  add_output(flag);

  CLI::App* reproduce = app.add_subcommand("reproduce", "recompute every bundled fixture claim");
  reproduce->add_option("--degree", rep_degree, "window degree for the heaviest checks (default 3)");
  reproduce->add_flag("--field-ext", field_ext, "repeat the main fixture over a field extension");
  add_output(reproduce);

  CLI::App* selftest = app.add_subcommand("selftest", "randomized validator and identity sweeps");
  selftest->add_option("--seed", seed, "base seed (default 1)");
  selftest->add_option("--samples", samples, "samples per sweep (default 100)");
  add_output(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  lieenv::CommandResult res = lieenv::run_command([&]() -> lieenv::CommandResult {
    if (validate->parsed()) return lieenv::cmd_validate(read_file(file));
    if (reproduce->parsed()) return lieenv::cmd_reproduce(rep_degree, field_ext);
    if (selftest->parsed()) return lieenv::cmd_selftest(seed, samples);

    lieenv::AlgebraFile f = lieenv::parse_algebra_file(read_file(file));
    if (series->parsed()) return lieenv::cmd_series(f);
    if (weights->parsed()) return lieenv::cmd_weights(f, ideal, degree);
    if (center->parsed()) return lieenv::cmd_center(f, ideal, degree);
    if (stability->parsed()) return lieenv::cmd_stability(f, ideal, complement, degree);
    if (check->parsed()) return lieenv::cmd_check_product(f, a_src, b_src, space);
    if (flag->parsed()) return lieenv::cmd_flag(f);
    throw lieenv::UsageError("no command selected");
  });
  return emit(res, format);
}
