#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "gapmm/theorems.hpp"

namespace gapmm::detail {

inline MinimaxConfig minimax_config(const CheckConfig& cfg) {
  MinimaxConfig m = cfg.minimax;
  m.tol = cfg.tol;
  return m;
}

inline std::optional<SpectralSplit> try_split(const SymMatrix& m, double gamma, const Tolerances& tol) {
  try {
    return split(m, gamma, tol);
  } catch (const GapTooClose&) {
    return std::nullopt;
  }
}

/// Smallest distance of an eigenvalue to the outside of (lo, hi); 0 if none inside.
inline double penetration(const Vector& ev, double lo, double hi) {
  double p = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > lo && ev(i) < hi) p = std::max(p, std::min(ev(i) - lo, hi - ev(i)));
  return p;
}

// Distance from gamma to the spectrum.
inline double distance_to_spectrum(const SymMatrix& m, double gamma) {
  return (eigenvalues(m).array() - gamma).abs().minCoeff();
}

inline void run_minimax(TheoremReport& r, const MinimaxEngine& e, const CheckConfig& cfg) {
  const int kmax = std::min(cfg.k_max, e.max_k());
  for (int k = 1; k <= kmax; ++k) r.add_minimax(e.verify(k));
}

/// Throws InsideSpectrum if an eigenvalue of A lies inside (c, d).
void require_gap(const SymMatrix& a, double c, double d, const Tolerances& tol);

}  // namespace gapmm::detail
