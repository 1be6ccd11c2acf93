#include <cmath>
#include <limits>

#include "gapmm/theorems.hpp"
#include "theorem_util.hpp"

namespace gapmm {

namespace detail {

void require_gap(const SymMatrix& a, double c, double d, const Tolerances& tol) {
  if (!(c < d)) throw DomainError("gap endpoints must satisfy c < d");
  const double gtol = gap_tolerance(a, tol);
  Vector ev = eigenvalues(a);
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > c + gtol && ev(i) < d - gtol)
      throw InsideSpectrum("eigenvalue " + std::to_string(ev(i)) + " lies inside the gap");
}

}  // namespace detail

using detail::minimax_config;

namespace {

struct PartNorms {
  double pos;
  double neg;
};

PartNorms part_norms(const SymMatrix& v) {
  Vector ev = eigenvalues(v);
  if (ev.size() == 0) return {0.0, 0.0};
  return {std::max(ev(ev.size() - 1), 0.0), std::max(-ev(0), 0.0)};
}

Vector upper_part(const SymMatrix& m, double gamma, const Tolerances& tol) {
  return part_spectrum(m, split(m, gamma, tol), tol);
}

double ordered_violation(const Vector& lo, const Vector& hi, int kmax) {
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < kmax; ++k) worst = std::max(worst, (lo(k) - hi(k)) / (1.0 + std::abs(hi(k))));
  return worst;
}

}  // namespace

TheoremReport check_bounded_perturbation(const SymMatrix& a, const SymMatrix& v, double c, double d,
                                         const CheckConfig& cfg) {
  TheoremReport r;
  r.id = "bounded-pert";
  const Tolerances& tol = cfg.tol;
  detail::require_gap(a, c, d, tol);
  PartNorms pn = part_norms(v);
  const double margin = (d - c) - (pn.pos + pn.neg);
  r.hypothesis("||V+|| + ||V-|| < d - c", margin > 0, margin);
  if (!r.hypotheses_hold()) {
    for (const char* n : {"interval free of spectrum of A+V", "dim Ran P+ = dim Ran Q+", "projector bound",
                          "negativity route", "off-diagonal route", "routes agree"})
      r.conclude_na(n);
    return r;
  }
  const SymMatrix bm = a + v;
  const double lo = c + pn.pos, hi = d - pn.neg, gamma = 0.5 * (lo + hi);
  r.notes.push_back("gamma = " + std::to_string(gamma));
  r.conclude("interval free of spectrum of A+V", detail::penetration(eigenvalues(bm), lo, hi),
             gap_tolerance(bm, tol));
  SpectralSplit as = split(a, gamma, tol);
  auto bs = detail::try_split(bm, gamma, tol);
  if (!bs) {
    r.conclude("gamma outside spectrum of A+V", 1.0, 0.0);
    return r;
  }
  r.conclude("dim Ran P+ = dim Ran Q+", std::abs(as.rank_p() - bs->rank_p()), 0.0);
  const double ratio = (pn.pos + pn.neg) / (d - c);
  const double dist = spectral_norm(Matrix(as.Pp - bs->Pp));
  r.conclude("projector bound", dist - std::sin(0.5 * std::asin(ratio)), tol.projector_bound);

  TheoremReport r1 = check_infinitesimal_perturbation(a, v, gamma, cfg);
  r.absorb(r1, "negativity route: ");
  r.minimax = r1.minimax;

  DiagOffParts parts = split_diag_offdiag(v, as);
  const SymMatrix a2 = a + parts.diagonal;
  SpectralSplit as2 = split(a2, gamma, tol);
  r.conclude("A + Vdiag keeps P+", spectral_norm(Matrix(as2.Pp - as.Pp)),
             tol.identity * (1.0 + spectral_norm(a) + spectral_norm(v)));
  TheoremReport r2 = check_offdiagonal_operator(a2, parts.off_diagonal, gamma, cfg);
  r.absorb(r2, "off-diagonal route: ");

  double worst = 0.0;
  const std::size_t m = std::min(r1.minimax.size(), r2.minimax.size());
  for (std::size_t i = 0; i < m; ++i) {
    const auto& x = r1.minimax[i];
    const auto& y = r2.minimax[i];
    const double scale = 1.0 + std::abs(x.direct);
    worst = std::max({worst, std::abs(x.direct - y.direct) / scale, std::abs(x.candidate - y.candidate) / scale});
  }
  r.conclude("routes agree", m == r1.minimax.size() && m == r2.minimax.size() ? worst : 1.0, tol.route);
  return r;
}

TheoremReport check_monotonicity(const SymMatrix& a, const SymMatrix& v0, const SymMatrix& v1, double c, double d,
                                 const CheckConfig& cfg) {
  TheoremReport r;
  r.id = "monotonicity";
  const Tolerances& tol = cfg.tol;
  detail::require_gap(a, c, d, tol);
  PartNorms p0 = part_norms(v0), p1 = part_norms(v1);
  const double m0 = (d - c) - (p0.pos + p0.neg), m1 = (d - c) - (p1.pos + p1.neg);
  r.hypothesis("||V0+|| + ||V0-|| < d - c", m0 > 0, m0);
  r.hypothesis("||V1+|| + ||V1-|| < d - c", m1 > 0, m1);
  PsdCheck ord = psd_leq(v0, v1, tol.negativity * (1.0 + spectral_norm(v0) + spectral_norm(v1)));
  r.hypothesis("V0 <= V1", ord.holds, ord.margin);
  if (!r.hypotheses_hold()) {
    r.conclude_na("dimensions agree");
    r.conclude_na("eigenvalues ordered");
    return r;
  }
  Vector e0 = upper_part(a + v0, 0.5 * (c + p0.pos + d - p0.neg), tol);
  Vector e1 = upper_part(a + v1, 0.5 * (c + p1.pos + d - p1.neg), tol);
  r.conclude("dimensions agree", std::abs(e0.size() - e1.size()), 0.0);
  const int kmax = static_cast<int>(std::min(e0.size(), e1.size()));
  r.conclude("eigenvalues ordered", kmax ? ordered_violation(e0, e1, kmax) : 0.0, tol.lipschitz);
  return r;
}

TheoremReport check_bounded_continuity(const SymMatrix& a, const SymMatrix& v, double c, double d,
                                       const CheckConfig& cfg) {
  TheoremReport r;
  r.id = "continuity";
  const Tolerances& tol = cfg.tol;
  detail::require_gap(a, c, d, tol);
  PartNorms pn = part_norms(v);
  const double margin = (d - c) - (pn.pos + pn.neg);
  r.hypothesis("||V+|| + ||V-|| < d - c", margin > 0, margin);
  if (!r.hypotheses_hold()) {
    r.conclude_na("Lipschitz ||V||");
    return r;
  }
  std::vector<double> grid = cfg.t_grid.empty() ? linspace(0.0, 1.0, 21) : cfg.t_grid;
  std::vector<Vector> parts;
  for (double t : grid) {
    if (t < 0 || t > 1) throw DomainError("continuity grid must lie in [0, 1]");
    parts.push_back(upper_part(a + t * v, 0.5 * (c + t * pn.pos + d - t * pn.neg), tol));
  }
  const double nv = spectral_norm(v);
  Eigen::Index kmax = parts.front().size();
  for (const auto& p : parts) kmax = std::min(kmax, p.size());
  kmax = std::min<Eigen::Index>(kmax, cfg.k_max);
  for (int k = 1; k <= kmax; ++k) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = i + 1; j < grid.size(); ++j) {
        const double li = parts[i](k - 1), lj = parts[j](k - 1);
        worst = std::max(worst, (std::abs(li - lj) - nv * std::abs(grid[i] - grid[j])) /
                                    (1.0 + std::max(std::abs(li), std::abs(lj))));
      }
    r.conclude("Lipschitz ||V|| k=" + std::to_string(k), worst, tol.lipschitz);
  }
  return r;
}

TheoremReport check_unbounded_perturbation(const SymMatrix& a, const SymMatrix& v, double c, double d,
                                           const CheckConfig& cfg) {
  TheoremReport r;
  r.id = "unbounded-pert";
  const Tolerances& tol = cfg.tol;
  detail::require_gap(a, c, d, tol);
  const bool lower = cfg.branch == Branch::lower;
  const SymMatrix ref = lower ? a : -a;
  double best_b = 0.0, best_a = 0.0, best_margin = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 50; ++i) {
    const double b = 0.02 * i;
    const double av = sandwich_bound(v, ref, b);
    const double margin = (d - c) - 2.0 * av + (lower ? -b : b) * (c + d);
    if (margin > best_margin) {
      best_margin = margin;
      best_a = av;
      best_b = b;
    }
  }
  r.hypothesis(lower ? "|v[x]| <= a + b a[x] certified with b < 1" : "|v[x]| <= a - b a[x] certified with b < 1",
               best_b < 1.0, 1.0 - best_b);
  r.hypothesis(lower ? "2a + b(c+d) < d - c" : "2a - b(c+d) < d - c", best_margin > 0, best_margin);
  r.notes.push_back("certified a = " + std::to_string(best_a) + ", b = " + std::to_string(best_b) +
                    " (sufficient PSD condition)");
  r.notes.push_back("finite dimension: the A-bound of V is 0, so the relative-bound hypothesis holds trivially");
  if (!r.hypotheses_hold()) {
    for (const char* n : {"interval free of spectrum of A+V", "dim Ran P+ = dim Ran Q+", "minimax"})
      r.conclude_na(n);
    return r;
  }
  const double lo = lower ? best_a + (1.0 + best_b) * c : (1.0 - best_b) * c + best_a;
  const double hi = lower ? (1.0 - best_b) * d - best_a : (1.0 + best_b) * d - best_a;
  const double gamma = 0.5 * (lo + hi);
  const SymMatrix bm = a + v;
  r.conclude("interval free of spectrum of A+V", detail::penetration(eigenvalues(bm), lo, hi),
             gap_tolerance(bm, tol));
  SpectralSplit as = split(a, 0.5 * (c + d), tol);
  auto bs = detail::try_split(bm, gamma, tol);
  if (!bs) {
    r.conclude("gamma outside spectrum of A+V", 1.0, 0.0);
    return r;
  }
  r.conclude("dim Ran P+ = dim Ran Q+", std::abs(as.rank_p() - bs->rank_p()), 0.0);
  MinimaxEngine e(bm, as, *bs, minimax_config(cfg));
  detail::run_minimax(r, e, cfg);
  return r;
}

}  // namespace gapmm
