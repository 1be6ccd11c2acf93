#include "gapmm/report.hpp"

#include <cmath>

namespace gapmm {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "fail";
}

void TheoremReport::hypothesis(std::string name, bool holds, double margin) {
  hypotheses.push_back({std::move(name), holds, margin});
}

bool TheoremReport::hypotheses_hold() const {
  for (const auto& h : hypotheses)
    if (!h.holds) return false;
  return true;
}

void TheoremReport::conclude(std::string name, double residual, double tolerance) {
  Verdict v = !hypotheses_hold()        ? Verdict::not_applicable
              : residual <= tolerance ? Verdict::pass
                                      : Verdict::fail;
  conclusions.push_back({std::move(name), v, residual, tolerance});
}

void TheoremReport::conclude_na(std::string name) {
  conclusions.push_back({std::move(name), Verdict::not_applicable, std::nan(""), std::nan("")});
}

void TheoremReport::add_minimax(const MinimaxReport& m) {
  minimax.push_back(m);
  double residual = std::abs((m.refined && m.status == MinimaxStatus::refined_pass ? *m.refined : m.candidate) - m.direct);
  if (m.probe_min < m.direct - m.tolerance) residual = std::max(residual, m.direct - m.probe_min);
  std::string name = "minimax k=" + std::to_string(m.k);
  if (!hypotheses_hold()) {
    conclude_na(name);
    return;
  }
  conclusions.push_back({name, m.status == MinimaxStatus::fail ? Verdict::fail : Verdict::pass, residual, m.tolerance});
}

void TheoremReport::absorb(const TheoremReport& other, const std::string& prefix) {
  for (const auto& c : other.conclusions) {
    Conclusion copy = c;
    copy.name = prefix + c.name;
    if (!hypotheses_hold()) copy.verdict = Verdict::not_applicable;
    conclusions.push_back(copy);
  }
  for (const auto& h : other.hypotheses)
    if (!h.holds) {
      bool applicable = hypotheses_hold();
      conclusions.push_back({prefix + "hypothesis " + h.name, applicable ? Verdict::fail : Verdict::not_applicable,
                             -h.margin, 0.0});
    }
}

int TheoremReport::failures() const {
  int n = 0;
  for (const auto& c : conclusions) n += c.verdict == Verdict::fail;
  return n;
}

const Conclusion* TheoremReport::find(const std::string& name) const {
  for (const auto& c : conclusions)
    if (c.name == name) return &c;
  return nullptr;
}

nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

nlohmann::ordered_json to_json(const MinimaxReport& m) {
  nlohmann::ordered_json j;
  j["k"] = m.k;
  j["direct"] = number(m.direct);
  j["candidate"] = number(m.candidate);
  j["form"] = number(m.form_value);
  j["probe_min"] = number(m.probe_min);
  j["probes"] = m.probes;
  j["refined"] = m.refined ? number(*m.refined) : nlohmann::ordered_json(nullptr);
  j["status"] = to_string(m.status);
  j["tolerance"] = number(m.tolerance);
  return j;
}

nlohmann::ordered_json to_json(const TheoremReport& r) {
  nlohmann::ordered_json j;
  j["theorem"] = r.id;
  auto& hs = j["hypotheses"] = nlohmann::ordered_json::array();
  for (const auto& h : r.hypotheses) hs.push_back({{"name", h.name}, {"holds", h.holds}, {"margin", number(h.margin)}});
  auto& cs = j["conclusions"] = nlohmann::ordered_json::array();
  for (const auto& c : r.conclusions) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["holds"] = c.verdict == Verdict::not_applicable ? nlohmann::ordered_json(nullptr)
                                                       : nlohmann::ordered_json(c.verdict == Verdict::pass);
    cj["status"] = to_string(c.verdict);
    cj["residual"] = number(c.residual);
    cj["tolerance"] = number(c.tolerance);
    cs.push_back(cj);
  }
  auto& ms = j["minimax"] = nlohmann::ordered_json::array();
  for (const auto& m : r.minimax) ms.push_back(to_json(m));
  j["notes"] = r.notes;
  return j;
}

}  // namespace gapmm
