#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gapmm/minimax.hpp"

namespace gapmm {

struct Hypothesis {
  std::string name;
  bool holds;
  double margin;
};

enum class Verdict { pass, fail, not_applicable };
const char* to_string(Verdict v);

struct Conclusion {
  std::string name;
  Verdict verdict;
  double residual;   // violation measure; passes when <= tolerance
  double tolerance;
};

/// Outcome of one checker on one instance. Conclusions are only evaluated
/// when every hypothesis holds; otherwise they are not applicable.
struct TheoremReport {
  std::string id;
  std::vector<Hypothesis> hypotheses;
  std::vector<Conclusion> conclusions;
  std::vector<MinimaxReport> minimax;
  std::vector<std::string> notes;

  void hypothesis(std::string name, bool holds, double margin);
  bool hypotheses_hold() const;
  /// Records a conclusion; marked not applicable when hypotheses fail.
  void conclude(std::string name, double residual, double tolerance);
  void conclude_na(std::string name);
  void add_minimax(const MinimaxReport& m);
  /// Copies another report's conclusions under a name prefix.
  void absorb(const TheoremReport& other, const std::string& prefix);

  int failures() const;
  bool passed() const { return hypotheses_hold() && failures() == 0; }
  const Conclusion* find(const std::string& name) const;
};

nlohmann::ordered_json to_json(const MinimaxReport& m);
nlohmann::ordered_json to_json(const TheoremReport& r);
/// Finite numbers as-is, non-finite as null.
nlohmann::ordered_json number(double x);

}  // namespace gapmm
