#ifndef LIEENV_REPORT_HPP
#define LIEENV_REPORT_HPP

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace lieenv {

/// Result of one CLI run, rendered either as JSON (fixed schema, keys in
/// fixed order) or as readable text. Commands that produce no weight or
/// stability data leave those arrays empty; analysis prose goes in notes.
struct RunReport {
  std::string command;
  std::string algebra_digest;
  std::uint32_t p = 0, k = 1;
  std::optional<std::uint32_t> degree;

  struct WeightEntry {
    std::vector<std::string> values;
    std::size_t dim = 0;
    std::vector<std::string> basis;
  };
  std::vector<WeightEntry> weights;

  struct StabilityEntry {
    std::vector<std::string> values;
    bool stable = true;
    std::optional<std::string> witness;
  };
  std::vector<StabilityEntry> stability;

  struct Validators {
    std::optional<bool> prop26, thm27, lemma23, corollary;
  } validators;

  std::vector<std::string> notes;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["algebra_digest"] = algebra_digest;
    j["field"] = {{"p", p}, {"k", k}};
    if (degree) j["degree"] = *degree;
    else j["degree"] = nullptr;
    j["weights"] = nlohmann::ordered_json::array();
    for (const auto& w : weights) {
      nlohmann::ordered_json e;
      e["values"] = w.values;
      e["dim"] = w.dim;
      e["basis"] = w.basis;
      j["weights"].push_back(e);
    }
    j["stability"] = nlohmann::ordered_json::array();
    for (const auto& s : stability) {
      nlohmann::ordered_json e;
      e["values"] = s.values;
      e["stable"] = s.stable;
      if (s.witness) e["witness"] = *s.witness;
      else e["witness"] = nullptr;
      j["stability"].push_back(e);
    }
    auto opt = [](const std::optional<bool>& b) {
      return b ? nlohmann::ordered_json(*b) : nlohmann::ordered_json(nullptr);
    };
    j["validators"] = {{"prop26", opt(validators.prop26)},
                       {"thm27", opt(validators.thm27)},
                       {"lemma23", opt(validators.lemma23)},
                       {"corollary", opt(validators.corollary)}};
    j["notes"] = notes;
    return j;
  }

  std::string to_text() const {
    std::ostringstream out;
    out << "command: " << command << "\n";
    if (!algebra_digest.empty()) {
      out << "algebra: " << algebra_digest << " over F_" << p;
      if (k > 1) out << "^" << k;
      out << "\n";
    }
    if (degree) out << "degree: " << *degree << "\n";
    auto tuple = [](const std::vector<std::string>& vs) {
      std::string s = "(";
      for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) s += ",";
        s += vs[i];
      }
      return s + ")";
    };
    for (const auto& w : weights) {
      out << "weight " << tuple(w.values) << ": dim " << w.dim << "\n";
      for (const auto& b : w.basis) out << "  " << b << "\n";
    }
    for (const auto& s : stability) {
      out << "weight " << tuple(s.values) << ": "
          << (s.stable ? "stable" : "UNSTABLE") << "\n";
      if (s.witness) out << "  " << *s.witness << "\n";
    }
    auto vname = [&](const char* name, const std::optional<bool>& b) {
      if (b) out << "check " << name << ": " << (*b ? "holds" : "FAILS") << "\n";
    };
    vname("prop26", validators.prop26);
    vname("thm27", validators.thm27);
    vname("lemma23", validators.lemma23);
    vname("corollary", validators.corollary);
    for (const auto& n : notes) out << n << "\n";
    return out.str();
  }
};

}  // namespace lieenv

#endif
