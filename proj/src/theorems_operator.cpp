#include <cmath>
#include <limits>

#include "gapmm/theorems.hpp"
#include "theorem_util.hpp"

namespace gapmm {

using detail::minimax_config;
using detail::try_split;
using detail::distance_to_spectrum;

NegativityCheck check_negativity(const SymMatrix& b, const SpectralSplit& as, const Tolerances& tol) {
  if (as.rank_m() == 0) return {true, std::numeric_limits<double>::infinity()};
  double margin = -max_eigenvalue(compress(b.shifted(-as.gamma), as.basis_m, tol));
  return {margin >= -tol.negativity * (1.0 + spectral_norm(b)), margin};
}

namespace {

void collapse_note(TheoremReport& r, const SymMatrix& v, const SymMatrix& a, double b) {
  RelBound rb = min_operator_bound_a(v.mat(), a, b);
  r.notes.push_back("finite dimension: V is A-bounded with bound 0; certified a = " + std::to_string(rb.a) +
                    " at b = " + std::to_string(b) + " (" + rb.certificate + ")");
}

void conclude_lipschitz(TheoremReport& r, const std::vector<double>& t, const std::vector<Vector>& parts, int kmax,
                        double lipschitz, double tol) {
  for (int k = 1; k <= kmax; ++k) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = 0; j < t.size(); ++j) {
        if (i == j) continue;
        double li = parts[i](k - 1), lj = parts[j](k - 1);
        double excess = std::abs(li - lj) - lipschitz * std::abs(t[i] - t[j]);
        worst = std::max(worst, excess / (1.0 + std::max(std::abs(li), std::abs(lj))));
      }
    r.conclude("Lipschitz ||V|| k=" + std::to_string(k), worst, tol);
  }
}

}  // namespace

CommutatorReport check_commutator(const SymMatrix& a, const SymMatrix& v, const SpectralSplit& as,
                                  const SpectralSplit& bs, double b, const Tolerances& tol) {
  (void)tol;
  const Matrix& wp = as.basis_p;
  Matrix s = wp.transpose() * bs.Pm * wp;
  Matrix lam = wp.transpose() * a.mat() * wp;
  Matrix k = wp.transpose() * (bs.Pm * v.mat() - v.mat() * bs.Pm) * wp;
  CommutatorReport r;
  r.residual = spectral_norm(Matrix(lam * s - s * lam - k));
  r.scale = 1.0 + spectral_norm(a) + spectral_norm(v);
  if (s.size() > 0) r.spectral_radius = Eigen::EigenSolver<Matrix>(s, false).eigenvalues().cwiseAbs().maxCoeff();
  r.norm_s = spectral_norm(s);
  if (k.size() > 0) {
    RelBound kb = min_operator_bound_a(k, SymMatrix(lam), b);
    r.alpha = kb.a;
  }
  r.beta = b;
  r.pq_minus = spectral_norm(Matrix(as.Pp * bs.Pm));
  r.threshold_operator = radius_threshold_operator(b);
  r.gate_operator = r.pq_minus < r.threshold_operator;
  r.radius_bound_operator = radius_bound_operator(r.pq_minus, b);
  r.threshold_sum = radius_threshold_sum(b);
  r.gate_sum = r.pq_minus < r.threshold_sum;
  r.radius_bound_sum = radius_bound_sum(r.pq_minus, b);
  return r;
}

TheoremReport check_infinitesimal_perturbation(const SymMatrix& a, const SymMatrix& v, double gamma,
                                               const CheckConfig& cfg) {
  TheoremReport r;
  r.id = "infinitesimal";
  const Tolerances& tol = cfg.tol;
  const SymMatrix bm = a + v;
  SpectralSplit as = split(a, gamma, tol);
  r.hypothesis("V symmetric", true, 0.0);
  auto bs = try_split(bm, gamma, tol);
  r.hypothesis("gamma outside spectrum of A+V", bs.has_value(), distance_to_spectrum(bm, gamma));
  double pqm = bs ? spectral_norm(Matrix(as.Pp * bs->Pm)) : 1.0;
  r.hypothesis("||P+ Q-|| < 1", pqm < 1.0 - tol.graph, 1.0 - pqm);
  NegativityCheck neg = check_negativity(bm, as, tol);
  r.hypothesis("A+V-gamma nonpositive on Ran P-", neg.holds, neg.margin);
  collapse_note(r, v, a, cfg.bound_b);
  if (!r.hypotheses_hold()) {
    for (const char* n : {"dim Ran P+ = dim Ran Q+", "minimax", "commutator equation"}) r.conclude_na(n);
    return r;
  }
  r.conclude("dim Ran P+ = dim Ran Q+", std::abs(as.rank_p() - bs->rank_p()), 0.0);
  MinimaxEngine e(bm, as, *bs, minimax_config(cfg));
  detail::run_minimax(r, e, cfg);
  CommutatorReport cr = check_commutator(a, v, as, *bs, cfg.bound_b, tol);
  r.conclude("commutator equation", cr.residual, tol.identity * cr.scale * (1.0 + cr.norm_s));
  r.conclude("spectral radius of S within ||S|| + beta", cr.spectral_radius - cr.norm_s - cr.beta, tol.identity);
  r.conclude("radius gates consistent", cr.gates_consistent() ? 0.0 : 1.0, 0.0);
  r.notes.push_back("S = P+ Q- on Ran P+ is self-adjoint, so its spectral radius equals ||S||");
  return r;
}

TheoremReport check_semibounded(const SymMatrix& a, const SymMatrix& b, double gamma, const CheckConfig& cfg) {
  TheoremReport r;
  r.id = "semibounded";
  const Tolerances& tol = cfg.tol;
  SpectralSplit as = split(a, gamma, tol);
  const bool lower = cfg.branch == Branch::lower;
  r.hypothesis(lower ? "form of B bounded below" : "form of B bounded above", true,
               lower ? min_eigenvalue(b) : -max_eigenvalue(b));
  r.notes.push_back(lower ? "lower branch: form domain of the negative part is Ran P-"
                          : "upper branch: form domain of the positive part is Ran P+");
  auto bs = try_split(b, gamma, tol);
  r.hypothesis("gamma outside spectrum of B", bs.has_value(), distance_to_spectrum(b, gamma));
  double dist = bs ? spectral_norm(Matrix(as.Pp - bs->Pp)) : 1.0;
  r.hypothesis("||P+ - Q+|| < 1", dist < 1.0 - tol.graph, 1.0 - dist);
  NegativityCheck neg = check_negativity(b, as, tol);
  r.hypothesis("B-gamma nonpositive on Ran P-", neg.holds, neg.margin);
  SymMatrix form = QuadraticForm(b.shifted(-gamma)).matrix();
  double form_margin = as.rank_m() ? -max_eigenvalue(compress(form, as.basis_m, tol))
                                   : std::numeric_limits<double>::infinity();
  r.hypothesis("form b-gamma nonpositive on Ran P-", form_margin >= -tol.negativity * (1.0 + spectral_norm(b)),
               form_margin);
  if (!r.hypotheses_hold()) {
    for (const char* n : {"dim Ran P+ = dim Ran Q+", "minimax", "graph identities"}) r.conclude_na(n);
    return r;
  }
  r.conclude("dim Ran P+ = dim Ran Q+", std::abs(as.rank_p() - bs->rank_p()), 0.0);
  MinimaxEngine e(b, as, *bs, minimax_config(cfg));
  detail::run_minimax(r, e, cfg);
  GraphData g = graph_operator(as, *bs, tol);
  GraphIdentityReport gi = verify_graph_identities(g, as, *bs, tol);
  r.conclude("graph identities", gi.max_residual(), gi.tolerance);
  r.conclude("||P+ Q-|| <= ||P+ - Q+||", gi.pq_minus - gi.dist, gi.tolerance);
  return r;
}

TheoremReport check_offdiagonal_operator(const SymMatrix& a, const SymMatrix& v, double gamma, const CheckConfig& cfg) {
  TheoremReport r;
  r.id = "offdiag-op";
  const Tolerances& tol = cfg.tol;
  const SymMatrix bm = a + v;
  SpectralSplit as = split(a, gamma, tol);
  const double na = spectral_norm(a), nv = spectral_norm(v);
  OffDiagonality od = off_diagonality(v, as);
  const double odtol = tol.offdiag * (1.0 + na + nv);
  r.hypothesis("P+ V P+ = 0", od.upper <= odtol, odtol - od.upper);
  r.hypothesis("P- V P- = 0", od.lower <= odtol, odtol - od.lower);
  RelBound rb = min_operator_bound_a(v.mat(), a, cfg.bound_b);
  r.hypothesis("A-bound of V below 1", rb.b < 1.0, 1.0 - rb.b);
  collapse_note(r, v, a, cfg.bound_b);
  if (!r.hypotheses_hold()) {
    for (const char* n : {"gamma outside spectrum of A+V", "dim Ran P+ = dim Ran Q+", "minimax",
                          "||P+ - Q+|| <= sqrt(2)/2", "block diagonalisation", "block form", "graph identities"})
      r.conclude_na(n);
    return r;
  }
  auto bs = try_split(bm, gamma, tol);
  r.conclude("gamma outside spectrum of A+V", bs ? 0.0 : 1.0, 0.0);
  if (!bs) return r;
  r.conclude("dim Ran P+ = dim Ran Q+", std::abs(as.rank_p() - bs->rank_p()), 0.0);
  const double dist = spectral_norm(Matrix(as.Pp - bs->Pp));
  r.conclude("||P+ - Q+|| <= sqrt(2)/2", dist - std::sqrt(0.5), tol.offdiag_dist);

  GraphData g = graph_operator(as, *bs, tol);
  const int n = a.dim();
  Matrix id = Matrix::Identity(n, n);
  Matrix reduced = a.mat() - g.Y * v.mat();
  const double bd_tol = tol.block_diag * (1.0 + na + nv) * (1.0 + spectral_norm(g.Y));
  r.conclude("block diagonalisation", spectral_norm(Matrix((id - g.Y) * bm.mat() - reduced * (id - g.Y))), bd_tol);

  Matrix u(n, n);
  u << as.basis_p, as.basis_m;
  const int kp = as.rank_p(), km = as.rank_m();
  Matrix w = as.basis_p.transpose() * v.mat() * as.basis_m;
  Matrix expected = Matrix::Zero(n, n);
  expected.topLeftCorner(kp, kp) = as.basis_p.transpose() * a.mat() * as.basis_p + g.X.transpose() * w.transpose();
  expected.bottomRightCorner(km, km) = as.basis_m.transpose() * a.mat() * as.basis_m - g.X * w;
  r.conclude("block form", spectral_norm(Matrix(u.transpose() * reduced * u - expected)), bd_tol);

  GraphIdentityReport gi = verify_graph_identities(g, as, *bs, tol);
  r.conclude("graph identities", gi.max_residual(), gi.tolerance);

  MinimaxEngine e(bm, as, *bs, minimax_config(cfg));
  detail::run_minimax(r, e, cfg);
  const int kmax = std::min(cfg.k_max, e.max_k());
  for (int k = 1; k <= kmax; ++k) {
    double lb = as.values_p(k - 1), val = e.direct(k);
    r.conclude("lower bound k=" + std::to_string(k), lb - val, tol.minimax * (1.0 + std::abs(val)));
  }

  if (!cfg.t_grid.empty()) {
    std::vector<Vector> parts;
    for (double t : cfg.t_grid) {
      SymMatrix bt = a + t * v;
      parts.push_back(part_spectrum(bt, split(bt, gamma, tol), tol));
    }
    conclude_lipschitz(r, cfg.t_grid, parts, kmax, nv, tol.lipschitz);
  }
  return r;
}

TheoremReport check_offdiagonal_form(const SymMatrix& a, const SymMatrix& v, double gamma, const CheckConfig& cfg) {
  TheoremReport r;
  r.id = "offdiag-form";
  const Tolerances& tol = cfg.tol;
  const SymMatrix ah = a.shifted(-gamma);
  const SymMatrix bh = ah + v;
  SpectralSplit as = split(ah, 0.0, tol);
  const double na = spectral_norm(ah), nv = spectral_norm(v);
  OffDiagonality od = off_diagonality(v, as);
  const double odtol = tol.offdiag * (1.0 + na + nv);
  r.hypothesis("form v vanishes on Ran P+", od.upper <= odtol, odtol - od.upper);
  r.hypothesis("form v vanishes on Ran P-", od.lower <= odtol, odtol - od.lower);
  const double b = cfg.form_b;
  RelBound rb = min_form_bound_a(v, ah, b, cfg.branch);
  r.hypothesis("form bound of v with b < 1", b < 1.0, 1.0 - b);
  r.notes.push_back("certified form bound a = " + std::to_string(rb.a) + ", b = " + std::to_string(b) +
                    ", a_tilde = " + std::to_string(rb.a_tilde) + " (" + rb.certificate + ")");
  std::vector<double> grid = cfg.t_grid;
  if (grid.empty()) grid = linspace(-0.95 / (2.0 * b), 0.95 / (2.0 * b), 9);
  const bool lower = cfg.branch == Branch::lower;
  double semi = std::numeric_limits<double>::infinity();
  for (double t : grid) semi = std::min(semi, lower ? min_eigenvalue(ah + t * v) : -max_eigenvalue(ah + t * v));
  r.hypothesis(lower ? "forms a + t v bounded below on the grid" : "forms a + t v bounded above on the grid",
               std::isfinite(semi), semi);
  if (!r.hypotheses_hold()) {
    for (const char* n : {"gamma outside spectrum of B", "dim Ran P+ = dim Ran Q+", "minimax", "lower bound",
                          "upper bound", "Lipschitz"})
      r.conclude_na(n);
    return r;
  }
  auto bs = try_split(bh, 0.0, tol);
  r.conclude("gamma outside spectrum of B", bs ? 0.0 : 1.0, 0.0);
  if (!bs) return r;
  r.conclude("dim Ran P+ = dim Ran Q+", std::abs(as.rank_p() - bs->rank_p()), 0.0);
  const SymMatrix bm = a + v;
  MinimaxEngine e(bm, as, *bs, minimax_config(cfg));
  detail::run_minimax(r, e, cfg);
  const int kmax = std::min(cfg.k_max, e.max_k());
  for (int k = 1; k <= kmax; ++k) {
    const double lam_a = as.values_p(k - 1);
    const double lam_b = e.direct(k) - gamma;
    const double scale = tol.minimax * (1.0 + std::abs(lam_b));
    r.conclude("lower bound k=" + std::to_string(k), lam_a - lam_b, scale);
    if (b <= 1.0) {
      const double upper = (lower ? 1.0 + b : 1.0 - b) * lam_a + rb.a_tilde;
      r.conclude("upper bound k=" + std::to_string(k), lam_b - upper, scale);
    }
  }

  std::vector<Vector> parts;
  for (double t : grid) {
    SymMatrix bt = ah + t * v;
    parts.push_back(part_spectrum(bt, split(bt, 0.0, tol), tol));
  }
  for (int k = 1; k <= kmax; ++k) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const double s = grid[i], t = grid[j];
        if (i == j || b * std::abs(t - s) > 1.0 - b * std::abs(s)) continue;
        const double ls = parts[i](k - 1), lt = parts[j](k - 1);
        const double denom = 1.0 - b * std::abs(s);
        const double bound = rb.a_tilde * std::abs(t - s) / denom + b * std::abs(t - s) / denom * std::abs(ls);
        worst = std::max(worst, (std::abs(lt - ls) - bound) / (1.0 + std::max(std::abs(ls), std::abs(lt))));
      }
    r.conclude("Lipschitz k=" + std::to_string(k), worst, tol.lipschitz);
  }
  return r;
}

}  // namespace gapmm
