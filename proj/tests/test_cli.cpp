#include <gtest/gtest.h>

#include <lieenv/commands.hpp>
#include <lieenv/fixtures.hpp>

#include <string>
#include <vector>

using namespace lieenv;

namespace {

bool any_note_contains(const CommandResult& res, const std::string& needle) {
  for (const auto& n : res.report.notes)
    if (n.find(needle) != std::string::npos) return true;
  return false;
}

const char* kNonIdealSubspace = R"([field]
p = 3
[basis]
x y
[brackets]
x,y = y
[subspaces]
S = x
)";

}  // namespace

TEST(CmdValidate, AcceptsAndRejects) {
  auto ok = cmd_validate(fixtures::unstable_weights());
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_TRUE(any_note_contains(ok, "define a Lie algebra"));
  EXPECT_TRUE(any_note_contains(ok, "dimension 5"));

  auto bad = cmd_validate(R"([field]
p = 5
[basis]
x y z
[brackets]
x,y = z
x,z = x
)");
  EXPECT_EQ(bad.exit_code, 2);
  EXPECT_TRUE(any_note_contains(bad, "Jacobi"));

  // malformed input is a usage problem, not a mathematical verdict
  auto mangled = cmd_validate("[basis]\nx y\n");
  EXPECT_EQ(mangled.exit_code, 1);
  EXPECT_FALSE(mangled.error.empty());
}

TEST(CmdSeries, ReportsChains) {
  auto f = fixtures::load_power_invariance();
  auto res = cmd_series(f);
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_TRUE(any_note_contains(res, "derived series dims: 4 3 1 0"));
  EXPECT_TRUE(any_note_contains(res, "lower central series dims: 4 3"));
  EXPECT_TRUE(any_note_contains(res, "solvable: yes"));
  EXPECT_TRUE(any_note_contains(res, "nilpotent: no"));
}

TEST(CmdWeights, FixtureWindow) {
  auto f = fixtures::load_unstable_weights();
  auto res = cmd_weights(f, "H", 2);
  EXPECT_EQ(res.exit_code, 0);
  ASSERT_EQ(res.report.weights.size(), 3u);
  EXPECT_EQ(res.report.weights[0].values,
            (std::vector<std::string>{"0", "0", "0", "0"}));
  EXPECT_EQ(res.report.weights[0].dim, 1u);
  EXPECT_EQ(res.report.weights[1].values,
            (std::vector<std::string>{"1", "0", "0", "0"}));
  EXPECT_EQ(res.report.weights[1].dim, 1u);
  EXPECT_EQ(res.report.weights[1].basis,
            (std::vector<std::string>{"e1 + e2 + e3"}));
  EXPECT_EQ(res.report.weights[2].values,
            (std::vector<std::string>{"2", "0", "0", "0"}));
  EXPECT_EQ(res.report.weights[2].dim, 2u);
  EXPECT_TRUE(any_note_contains(res, "window of 15 monomials"));
  ASSERT_TRUE(res.report.degree.has_value());
  EXPECT_EQ(*res.report.degree, 2u);
}

TEST(CmdWeights, ErrorPaths) {
  auto f = fixtures::load_unstable_weights();
  auto unknown = cmd_weights(f, "Q", 2);
  EXPECT_EQ(unknown.exit_code, 1);
  EXPECT_NE(unknown.error.find("unknown subspace"), std::string::npos);

  auto nonideal = cmd_weights(parse_algebra_file(kNonIdealSubspace), "S", 2);
  EXPECT_EQ(nonideal.exit_code, 2);
  EXPECT_NE(nonideal.error.find("not an ideal"), std::string::npos);

  auto capped = cmd_weights(f, "H", 2, /*cap=*/3);
  EXPECT_EQ(capped.exit_code, 1);
  EXPECT_NE(capped.error.find("window"), std::string::npos);
}

TEST(CmdCenter, DegreeThreeWindow) {
  auto f = fixtures::load_unstable_weights();
  auto res = cmd_center(f, "H", 3);
  EXPECT_EQ(res.exit_code, 0);
  ASSERT_EQ(res.report.weights.size(), 1u);
  EXPECT_EQ(res.report.weights[0].values,
            (std::vector<std::string>{"0", "0", "0", "0"}));
  EXPECT_EQ(res.report.weights[0].dim, 5u);
  EXPECT_TRUE(any_note_contains(res, "weight-zero space"));
}

TEST(CmdStability, FixtureVerdictsAndValidators) {
  auto f = fixtures::load_unstable_weights();
  auto res = cmd_stability(f, "H", {}, 2);
  EXPECT_EQ(res.exit_code, 0);
  ASSERT_EQ(res.report.stability.size(), 3u);
  EXPECT_TRUE(res.report.stability[0].stable);
  EXPECT_FALSE(res.report.stability[0].witness.has_value());
  EXPECT_FALSE(res.report.stability[1].stable);
  EXPECT_FALSE(res.report.stability[2].stable);
  EXPECT_TRUE(res.report.stability[1].witness.has_value());

  ASSERT_TRUE(res.report.validators.prop26.has_value());
  EXPECT_TRUE(*res.report.validators.prop26);
  ASSERT_TRUE(res.report.validators.thm27.has_value());
  EXPECT_TRUE(*res.report.validators.thm27);
  EXPECT_FALSE(res.report.validators.lemma23.has_value());  // hypothesis not met
  EXPECT_TRUE(any_note_contains(res, "nilpotent criterion skipped"));
  ASSERT_TRUE(res.report.validators.corollary.has_value());
  EXPECT_TRUE(*res.report.validators.corollary);
  EXPECT_TRUE(any_note_contains(res, "semicenter window stable: no"));
}

TEST(CmdStability, ExplicitComplementOperand) {
  auto f = fixtures::load_unstable_weights();
  auto res = cmd_stability(f, "H", {"x"}, 2);
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_EQ(res.report.stability.size(), 3u);

  auto bad = cmd_stability(f, "H", {"x*y"}, 2);
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_NE(bad.error.find("linear combination"), std::string::npos);

  auto inside = cmd_stability(f, "H", {"y"}, 2);
  EXPECT_EQ(inside.exit_code, 2);  // complement vector inside the ideal
}

TEST(CmdCheckProduct, NamedElementsFromTheFile) {
  auto f = fixtures::load_unstable_weights();
  // against the ideal, the factors carry weights 1 and 2 and they cancel
  auto res = cmd_check_product(f, "u", "v", "H");
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_TRUE(any_note_contains(res, "a: semi-invariant of weight (1,0,0,0)"));
  EXPECT_TRUE(any_note_contains(res, "b: semi-invariant of weight (2,0,0,0)"));
  EXPECT_TRUE(any_note_contains(res, "a*b: semi-invariant of weight (0,0,0,0)"));
  EXPECT_TRUE(any_note_contains(res, "weights add up: yes"));

  // against the whole algebra, nothing here is an eigenvector
  auto full = cmd_check_product(f, "u", "v");
  EXPECT_EQ(full.exit_code, 0);
  EXPECT_TRUE(any_note_contains(full, "a: not semi-invariant"));
  EXPECT_TRUE(any_note_contains(full, "a*b: not semi-invariant"));

  auto zero = cmd_check_product(f, "0", "u");
  EXPECT_EQ(zero.exit_code, 2);  // zero operand has no weight to speak of
}

TEST(CmdCheckProduct, InvariantPowerOfNonInvariantElement) {
  auto f = fixtures::load_power_invariance();
  auto res = cmd_check_product(f, "y", "y^2");
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_TRUE(any_note_contains(res, "a: not semi-invariant"));
  EXPECT_TRUE(any_note_contains(res, "b: not semi-invariant"));
  EXPECT_TRUE(any_note_contains(res, "a*b: semi-invariant of weight (0,0,0,0)"));
  EXPECT_TRUE(any_note_contains(res, "FAILS here"));
}

TEST(CmdFlag, ExistenceDependsOnTheAlgebra) {
  auto yes = cmd_flag(fixtures::load_power_invariance());
  EXPECT_EQ(yes.exit_code, 0);
  EXPECT_TRUE(any_note_contains(yes, "chain of ideals with one-dimensional steps:"));

  auto no = cmd_flag(parse_algebra_file(R"([field]
p = 3
[basis]
x y z
[brackets]
x,y = z
x,z = 2*y
)"));
  EXPECT_EQ(no.exit_code, 0);
  EXPECT_TRUE(any_note_contains(no, "no chain"));
}

TEST(CmdReproduce, AllClaimsPass) {
  auto res = cmd_reproduce();
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_GE(res.report.notes.size(), 30u);
  for (const auto& n : res.report.notes) EXPECT_NE(n.rfind("FAIL", 0), 0u) << n;
  EXPECT_TRUE(any_note_contains(res, "printed"));  // the coefficient discrepancy
}

TEST(CmdSelftest, SmallRunIsClean) {
  auto res = cmd_selftest(7, 10);
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_TRUE(any_note_contains(res, "0 violation(s)"));
}

TEST(Report, JsonSchemaAndDeterminism) {
  auto f = fixtures::load_unstable_weights();
  auto res = cmd_stability(f, "H", {}, 2);
  auto j = res.report.to_json();

  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"command", "algebra_digest", "field",
                                            "degree", "weights", "stability",
                                            "validators", "notes"}));
  EXPECT_EQ(j["command"], "stability");
  EXPECT_EQ(j["field"]["p"], 3);
  EXPECT_EQ(j["field"]["k"], 1);
  EXPECT_EQ(j["degree"], 2);
  ASSERT_TRUE(j["weights"].is_array());
  for (const auto& w : j["weights"]) {
    EXPECT_TRUE(w.contains("values") && w.contains("dim") && w.contains("basis"));
  }
  for (const auto& s : j["stability"]) {
    EXPECT_TRUE(s.contains("values") && s.contains("stable") && s.contains("witness"));
  }
  for (const char* k : {"prop26", "thm27", "lemma23", "corollary"})
    EXPECT_TRUE(j["validators"].contains(k));
  EXPECT_TRUE(j["validators"]["lemma23"].is_null());

  // byte-identical across repeated runs
  auto res2 = cmd_stability(f, "H", {}, 2);
  EXPECT_EQ(j.dump(2), res2.report.to_json().dump(2));
  EXPECT_EQ(res.report.to_text(), res2.report.to_text());
}

TEST(Report, TextRendering) {
  auto f = fixtures::load_unstable_weights();
  auto res = cmd_stability(f, "H", {}, 2);
  std::string text = res.report.to_text();
  EXPECT_NE(text.find("command: stability"), std::string::npos);
  EXPECT_NE(text.find("weight (0,0,0,0): stable"), std::string::npos);
  EXPECT_NE(text.find("weight (1,0,0,0): UNSTABLE"), std::string::npos);
  EXPECT_NE(text.find("check prop26: holds"), std::string::npos);

  // a report with no algebra attached leaves the digest line out
  auto self = cmd_selftest(7, 4);
  EXPECT_EQ(self.report.to_text().find("algebra:"), std::string::npos);
}

TEST(Report, DegreeNullWhenAbsent) {
  auto f = fixtures::load_unstable_weights();
  auto res = cmd_series(f);
  auto j = res.report.to_json();
  EXPECT_TRUE(j["degree"].is_null());
  EXPECT_TRUE(j["weights"].empty());
  EXPECT_TRUE(j["stability"].empty());
}

TEST(ExitCodes, MappingIsStable) {
  auto usage = run_command([]() -> CommandResult { throw UsageError("nope"); });
  EXPECT_EQ(usage.exit_code, 1);
  auto parse = run_command([]() -> CommandResult { throw ParseError("line 1: bad"); });
  EXPECT_EQ(parse.exit_code, 1);
  auto cap = run_command([]() -> CommandResult { throw WindowCapError("too big"); });
  EXPECT_EQ(cap.exit_code, 1);
  auto val = run_command([]() -> CommandResult { throw ValidationError("broken"); });
  EXPECT_EQ(val.exit_code, 2);
  auto vio = run_command(
      []() -> CommandResult { throw ValidatorViolation("disagree", "bundle"); });
  EXPECT_EQ(vio.exit_code, 2);
  auto inv = run_command([]() -> CommandResult { throw std::invalid_argument("bad"); });
  EXPECT_EQ(inv.exit_code, 2);
  auto other = run_command([]() -> CommandResult { throw std::runtime_error("io"); });
  EXPECT_EQ(other.exit_code, 1);
}
