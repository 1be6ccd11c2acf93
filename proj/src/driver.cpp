#include "gapmm/driver.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "gapmm/random.hpp"
#include "gapmm/stokes.hpp"

namespace gapmm {

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{"infinitesimal", "semibounded",    "offdiag-op",   "offdiag-form",
                                            "bounded-pert",  "monotonicity",   "continuity",   "unbounded-pert",
                                            "surjectivity",  "heinz",          "form-sum",     "stokes"};
  return ids;
}

InstanceKind kind_for(const std::string& t) {
  if (t == "semibounded") return InstanceKind::semibounded;
  if (t == "offdiag-op") return InstanceKind::offdiag_op;
  if (t == "offdiag-form") return InstanceKind::offdiag_form;
  if (t == "unbounded-pert") return InstanceKind::unbounded_style;
  if (t == "stokes") return InstanceKind::stokes;
  if (t == "infinitesimal" || t == "bounded-pert" || t == "monotonicity" || t == "continuity" || t == "surjectivity" ||
      t == "heinz" || t == "form-sum")
    return InstanceKind::bounded_pert;
  throw DomainError("unknown theorem '" + t + "'");
}

bool needs_instances(const std::string& t) { return t != "heinz" && t != "form-sum"; }

CheckConfig check_config(const RunConfig& cfg, std::uint64_t seed) {
  CheckConfig c;
  c.tol = cfg.tol;
  c.k_max = cfg.k_max;
  c.branch = cfg.branch;
  c.minimax.probe_trials = cfg.trials;
  c.minimax.seed = seed;
  return c;
}

namespace {

SymMatrix random_spd(Rng& rng, int n) {
  Vector ev(n);
  for (int i = 0; i < n; ++i) ev(i) = std::exp(uniform(rng, std::log(0.1), std::log(10.0)));
  Matrix u = haar_frame(rng, n, n);
  return SymMatrix(Matrix(u * ev.asDiagonal() * u.transpose()));
}

TheoremReport error_report(const std::string& theorem, const std::string& what) {
  TheoremReport r;
  r.id = theorem;
  r.conclusions.push_back({"evaluation", Verdict::fail, std::nan(""), 0.0});
  r.notes.push_back("error: " + what);
  return r;
}

}  // namespace

TheoremReport run_check(const std::string& t, const Instance& in, const RunConfig& cfg) {
  CheckConfig cc = check_config(cfg, derive_seed(in.seed, 0x6d696e));
  cc.branch = in.spec.branch;
  const double c = in.spec.c, d = in.spec.d;
  try {
    if (t == "infinitesimal") return check_infinitesimal_perturbation(in.A, in.V, in.gamma, cc);
    if (t == "semibounded") return check_semibounded(in.A, in.B(), in.gamma, cc);
    if (t == "offdiag-op") {
      cc.t_grid = linspace(-2.0, 2.0, 21);
      return check_offdiagonal_operator(in.A, in.V, in.gamma, cc);
    }
    if (t == "offdiag-form") return check_offdiagonal_form(in.A, in.V, in.gamma, cc);
    if (t == "bounded-pert") return check_bounded_perturbation(in.A, in.V, c, d, cc);
    if (t == "monotonicity") {
      if (!in.V1) throw DomainError("monotonicity needs V1.txt");
      return check_monotonicity(in.A, in.V, *in.V1, c, d, cc);
    }
    if (t == "continuity") return check_bounded_continuity(in.A, in.V, c, d, cc);
    if (t == "unbounded-pert") return check_unbounded_perturbation(in.A, in.V, c, d, cc);
    if (t == "surjectivity") return to_report(check_surjectivity(in.A, in.B(), in.gamma, cfg.tol), cfg.tol);
    if (t == "stokes") {
      const int points = in.margins.value("points", (in.A.dim() - 1) / 2);
      StokesInstance st = assemble_stokes(make_grid(1, points), in.margins.value("nu", 1.0),
                                          in.margins.value("vstar", 0.0));
      StokesConfig sc;
      sc.k_max = std::min(cfg.k_max, points);
      sc.probe_trials = cfg.trials;
      sc.seed = in.seed;
      sc.tol = cfg.tol;
      return verify_stokes_bounds(st, sc).report;
    }
  } catch (const Error& e) {
    return error_report(t, e.what());
  }
  throw DomainError("checker '" + t + "' does not take instances");
}

Instance batch_instance(const std::string& t, int index, const RunConfig& cfg) {
  const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(index));
  InstanceSpec spec;
  spec.kind = kind_for(t);
  spec.c = cfg.c;
  spec.d = cfg.d;
  spec.branch = cfg.branch;
  const int span = cfg.dim_max - cfg.dim_min + 1;
  spec.dim = cfg.dim_min + static_cast<int>(splitmix64(seed) % static_cast<std::uint64_t>(span));
  if (spec.kind == InstanceKind::stokes) spec.dim = std::clamp(spec.dim, 2, 64);
  char id[64];
  std::snprintf(id, sizeof id, "%s-%04d", to_string(spec.kind), index);
  return generate(spec, seed, id);
}

TheoremReport batch_report(const std::string& t, int index, const RunConfig& cfg) {
  if (needs_instances(t)) return run_check(t, batch_instance(t, index, cfg), cfg);
  Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(index)));
  const int lo = std::max(2, std::min(cfg.dim_min, 20)), hi = std::max(lo, std::min(cfg.dim_max, 20));
  auto dim = [&] { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  try {
    if (t == "heinz") {
      const int n1 = dim(), n2 = dim();
      SymMatrix l1 = random_spd(rng, n1), l2 = random_spd(rng, n2);
      Matrix s = gaussian_matrix(rng, n2, n1);
      return to_report(check_heinz(l1, l2, s, linspace(0.0, 1.0, 11), cfg.tol), cfg.tol);
    }
    const int n = dim();
    SymMatrix l = random_symmetric(rng, n, uniform(rng, 0.5, 5.0));
    SymMatrix k = random_symmetric(rng, n, uniform(rng, 0.5, 5.0));
    return to_report(check_form_sum(l, k), cfg.tol);
  } catch (const Error& e) {
    return error_report(t, e.what());
  }
}

nlohmann::ordered_json report_json(const std::string& t, const std::vector<std::string>& ids,
                                   const std::vector<std::string>& kinds, const std::vector<TheoremReport>& reports,
                                   const RunConfig& cfg, const std::string& source) {
  nlohmann::ordered_json j;
  j["run"]["seed"] = cfg.seed;
  j["run"]["version"] = kVersion;
  auto& conf = j["run"]["config"];
  conf["theorem"] = t;
  conf["source"] = source;
  conf["dims"] = {cfg.dim_min, cfg.dim_max};
  conf["gap"] = {cfg.c, cfg.d};
  conf["probe_trials"] = cfg.trials;
  conf["k_max"] = cfg.k_max;
  conf["tol_scale"] = cfg.tol_scale;
  conf["minimax_tol"] = cfg.tol.minimax;
  int pass = 0, fail = 0, na = 0;
  auto& insts = j["instances"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const TheoremReport& r = reports[i];
    nlohmann::ordered_json ij;
    ij["id"] = ids[i];
    ij["kind"] = kinds[i];
    const nlohmann::ordered_json body = to_json(r);
    for (auto it = body.begin(); it != body.end(); ++it) ij[it.key()] = *it;
    insts.push_back(ij);
    if (r.failures() > 0) ++fail;
    else if (!r.hypotheses_hold()) ++na;
    else ++pass;
  }
  j["summary"] = {{"pass", pass}, {"fail", fail}, {"na", na}};
  return j;
}

nlohmann::ordered_json verify_batch(const std::string& t, int count, const RunConfig& cfg) {
  std::vector<std::string> ids, kinds;
  std::vector<TheoremReport> reports;
  for (int i = 0; i < count; ++i) {
    if (needs_instances(t)) {
      Instance in = batch_instance(t, i, cfg);
      ids.push_back(in.id);
      kinds.push_back(to_string(in.spec.kind));
      reports.push_back(run_check(t, in, cfg));
    } else {
      char id[64];
      std::snprintf(id, sizeof id, "%s-%04d", t.c_str(), i);
      ids.push_back(id);
      kinds.push_back(t);
      reports.push_back(batch_report(t, i, cfg));
    }
  }
  return report_json(t, ids, kinds, reports, cfg, "batch:" + std::to_string(count));
}

nlohmann::ordered_json verify_instances(const std::string& t, const std::vector<Instance>& insts, const RunConfig& cfg) {
  if (!needs_instances(t)) throw DomainError("checker '" + t + "' runs on generated batches only");
  std::vector<std::string> ids, kinds;
  std::vector<TheoremReport> reports;
  for (const auto& in : insts) {
    ids.push_back(in.id);
    kinds.push_back(to_string(in.spec.kind));
    reports.push_back(run_check(t, in, cfg));
  }
  return report_json(t, ids, kinds, reports, cfg, "files");
}

std::vector<Instance> load_instances(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(fs::path(path) / "manifest.json")) return {read_instance(path)};
  if (!fs::is_directory(path)) throw IoError("no instance found at " + path);
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(path))
    if (e.is_directory() && fs::exists(e.path() / "manifest.json")) dirs.push_back(e.path());
  if (dirs.empty()) throw IoError("no instance found at " + path);
  std::sort(dirs.begin(), dirs.end());
  std::vector<Instance> out;
  for (const auto& d : dirs) out.push_back(read_instance(d));
  return out;
}

int exit_code(const nlohmann::ordered_json& report) { return report["summary"]["fail"].get<int>() > 0 ? 1 : 0; }

SweepResult run_sweep(const Instance& in, double t0, double t1, int steps, int k_max, const Tolerances& tol) {
  if (steps < 2) throw DomainError("a sweep needs at least 2 steps");
  SweepResult s;
  s.report.id = "sweep";
  s.t = linspace(t0, t1, steps);
  const double c = in.spec.c, d = in.spec.d;
  const double nv = spectral_norm(in.V);
  const Vector ev = eigenvalues(in.V);
  const double vp = std::max(ev(ev.size() - 1), 0.0), vn = std::max(-ev(0), 0.0);
  const InstanceKind kind = in.spec.kind;
  const double b = 0.5;
  RelBound rb;
  std::vector<double> lam_shift(steps, 0.0);
  if (kind == InstanceKind::offdiag_form) rb = min_form_bound_a(in.V, in.A.shifted(-in.gamma), b, in.spec.branch);
  else if (kind != InstanceKind::bounded_pert && kind != InstanceKind::offdiag_op)
    throw DomainError(std::string("sweep does not support kind ") + to_string(kind));

  for (int i = 0; i < steps; ++i) {
    const double t = s.t[i];
    bool ok = true;
    double gamma = in.gamma;
    if (kind == InstanceKind::bounded_pert) {
      const double p = t >= 0 ? t * vp : -t * vn, q = t >= 0 ? t * vn : -t * vp;
      ok = p + q < d - c;
      gamma = 0.5 * (c + p + d - q);
    } else if (kind == InstanceKind::offdiag_form) {
      ok = b * std::abs(t) < 1.0;
    }
    s.valid.push_back(ok);
    if (!ok) {
      s.values.emplace_back();
      continue;
    }
    SymMatrix bt = in.A + t * in.V;
    Vector part = part_spectrum(bt, split(bt, gamma, tol), tol);
    if (kind == InstanceKind::offdiag_form) part.array() -= in.gamma;
    s.values.push_back(part);
  }
  s.k_max = k_max;
  for (const auto& v : s.values)
    if (v.size()) s.k_max = std::min<int>(s.k_max, static_cast<int>(v.size()));

  for (int k = 1; k <= s.k_max; ++k) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < steps; ++i) {
      if (!s.valid[i] || !s.valid[i + 1]) continue;
      const double dt = std::abs(s.t[i + 1] - s.t[i]);
      const double ls = s.values[i](k - 1), lt = s.values[i + 1](k - 1);
      double bound = nv;
      if (kind == InstanceKind::offdiag_form) {
        const double denom = 1.0 - b * std::abs(s.t[i]);
        if (b * dt > denom) continue;
        bound = (rb.a_tilde + b * std::abs(ls)) / denom;
      }
      s.max_quotient = std::max(s.max_quotient, std::abs(lt - ls) / dt);
      s.lipschitz_bound = std::max(s.lipschitz_bound, bound);
      worst = std::max(worst, (std::abs(lt - ls) - bound * dt) / (1.0 + std::max(std::abs(ls), std::abs(lt))));
    }
    s.report.conclude("Lipschitz k=" + std::to_string(k), worst, tol.lipschitz);
  }
  int skipped = static_cast<int>(std::count(s.valid.begin(), s.valid.end(), false));
  if (skipped) s.report.notes.push_back(std::to_string(skipped) + " grid points violate the hypothesis and were skipped");
  return s;
}

std::string sweep_csv(const SweepResult& s) {
  std::ostringstream out;
  out.precision(17);
  out << "t,valid";
  for (int k = 1; k <= s.k_max; ++k) out << ",lambda_" << k;
  out << '\n';
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    out << s.t[i] << ',' << (s.valid[i] ? 1 : 0);
    for (int k = 1; k <= s.k_max; ++k) {
      out << ',';
      if (s.valid[i]) out << s.values[i](k - 1);
    }
    out << '\n';
  }
  return out.str();
}

StokesRun run_stokes(int space_dim, int points, double nu, double vstar, int k_max, int levels, const RunConfig& cfg,
                     int size_cap) {
  StokesRun run;
  std::ostringstream csv;
  csv.precision(17);
  csv << "points,k,nu_lambda_L,lambda_B,upper\n";
  nlohmann::ordered_json j;
  j["run"]["seed"] = cfg.seed;
  j["run"]["version"] = kVersion;
  j["run"]["config"] = {{"dim", space_dim}, {"points", points}, {"nu", nu},
                        {"vstar", vstar},   {"k_max", k_max},   {"levels", levels}};
  std::vector<int> ladder;
  for (int l = 0; l < levels; ++l) ladder.push_back(space_dim == 1 ? points << l : points + 4 * l);
  auto& lv = j["levels"] = nlohmann::ordered_json::array();
  for (int p : ladder) {
    StokesInstance inst = assemble_stokes(make_grid(space_dim, p), nu, vstar, size_cap);
    StokesConfig sc;
    sc.k_max = k_max;
    sc.probe_trials = std::min(cfg.trials, 64);
    sc.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(p));
    sc.tol = cfg.tol;
    StokesResult res = verify_stokes_bounds(inst, sc);
    run.passed = run.passed && res.report.failures() == 0;
    nlohmann::ordered_json e = to_json(res.report);
    e["points"] = p;
    e["h"] = inst.grid.h;
    e["c_h"] = res.c_h;
    auto& rows = e["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : res.rows) {
      rows.push_back({{"k", r.k}, {"lower", r.lower}, {"value", r.value}, {"upper", r.upper}});
      csv << p << ',' << r.k << ',' << r.lower << ',' << r.value << ',' << r.upper << '\n';
    }
    e["histogram"] = {{"negative", res.negative_count},
                      {"near_full", res.near_full},
                      {"near_half", res.near_half},
                      {"targets", {number(-vstar * vstar / nu), number(-vstar * vstar / (2 * nu))}}};
    lv.push_back(e);
  }
  auto& conv = j["convergence"] = nlohmann::ordered_json::array();
  for (const auto& r : mesh_convergence(space_dim, ladder, nu))
    conv.push_back({{"points", r.points}, {"h", r.h}, {"value", r.value}, {"error", r.error}, {"order", number(r.order)}});
  j["summary"] = {{"pass", run.passed ? 1 : 0}, {"fail", run.passed ? 0 : 1}, {"na", 0}};
  run.report = j;
  run.csv = csv.str();
  return run;
}

}  // namespace gapmm
