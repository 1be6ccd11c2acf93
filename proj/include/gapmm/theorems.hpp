#pragma once

#include <vector>

#include "gapmm/minimax.hpp"
#include "gapmm/perturb.hpp"
#include "gapmm/report.hpp"

namespace gapmm {

struct CheckConfig {
  Tolerances tol;
  MinimaxConfig minimax;  // its tolerances are replaced by `tol`
  int k_max = 5;
  // Coefficient at which finite-dimensional relative bounds are certified
  // and recorded; any b > 0 admits a finite a here.
  double bound_b = 1e-3;
  // Form-bound coefficient for the off-diagonal form checks.
  double form_b = 0.5;
  Branch branch = Branch::lower;
  std::vector<double> t_grid;  // empty: checker default
};

struct NegativityCheck {
  bool holds;
  double margin;  // -lambda_max((B - gamma) on Ran P-)
};
NegativityCheck check_negativity(const SymMatrix& b, const SpectralSplit& a_split, const Tolerances& tol = {});

/// B = A + V with V symmetric: ||P+ Q-|| < 1 and negativity on Ran P- give
/// the minimax values of B above gamma.
TheoremReport check_infinitesimal_perturbation(const SymMatrix& a, const SymMatrix& v, double gamma,
                                               const CheckConfig& cfg = {});
/// Semibounded B with ||P+ - Q+|| < 1; operator and form paths.
TheoremReport check_semibounded(const SymMatrix& a, const SymMatrix& b, double gamma, const CheckConfig& cfg = {});
/// V off-diagonal for the split of A: graph block diagonalisation, the
/// sqrt(2)/2 projector bound, lower bounds and (with t_grid) Lipschitz ||V||.
TheoremReport check_offdiagonal_operator(const SymMatrix& a, const SymMatrix& v, double gamma,
                                         const CheckConfig& cfg = {});
/// V an off-diagonal form: minimax through the form, lower/upper eigenvalue
/// bounds and the Lipschitz estimate along A + t V.
TheoremReport check_offdiagonal_form(const SymMatrix& a, const SymMatrix& v, double gamma,
                                     const CheckConfig& cfg = {});

/// Bounded V with ||V+|| + ||V-|| < d - c for a gap (c, d) of A.
TheoremReport check_bounded_perturbation(const SymMatrix& a, const SymMatrix& v, double c, double d,
                                         const CheckConfig& cfg = {});
/// V0 <= V1: eigenvalues above the gap are ordered.
TheoremReport check_monotonicity(const SymMatrix& a, const SymMatrix& v0, const SymMatrix& v1, double c, double d,
                                 const CheckConfig& cfg = {});
/// t -> eigenvalues of A + t V above the gap are ||V||-Lipschitz on [0, 1].
TheoremReport check_bounded_continuity(const SymMatrix& a, const SymMatrix& v, double c, double d,
                                       const CheckConfig& cfg = {});
/// Form-bounded V relative to a semibounded A: spectral gap and minimax.
TheoremReport check_unbounded_perturbation(const SymMatrix& a, const SymMatrix& v, double c, double d,
                                           const CheckConfig& cfg = {});

/// The commutator equation Lambda S - S Lambda = K for S = P+ Q- on Ran P+.
struct CommutatorReport {
  double residual = 0;
  double scale = 1;
  double spectral_radius = 0;
  double norm_s = 0;
  double alpha = 0;
  double beta = 0;
  double pq_minus = 0;
  double threshold_operator = 0;  // (1 - 2b - b^2) / (1 - b^2)
  bool gate_operator = false;
  double radius_bound_operator = 0;
  double threshold_sum = 0;  // 1 - 2b
  bool gate_sum = false;
  double radius_bound_sum = 0;
  bool gates_consistent() const {
    return gate_operator == (radius_bound_operator < 1.0) && gate_sum == (radius_bound_sum < 1.0);
  }
};
CommutatorReport check_commutator(const SymMatrix& a, const SymMatrix& v, const SpectralSplit& a_split,
                                  const SpectralSplit& b_split, double b, const Tolerances& tol = {});

double radius_threshold_operator(double b);
double radius_bound_operator(double pq_minus, double b);
double radius_threshold_sum(double b);
double radius_bound_sum(double pq_minus, double b);

/// Bijectivity of P+ Q+ on Ran P+ and the weighted smallness quantities.
struct SurjectivityReport {
  double sigma_min = 0;  // smallest singular value of P+ Q+ on Ran P+
  double pq_minus = 0;
  bool neumann_consistent = true;  // sigma_min >= 1 - ||P+ Q-|| when the latter is < 1
  double weighted_form[2] = {0, 0};      // alpha = 0, 1; weights |A - gamma| + alpha to the power +-1/2
  double weighted_operator[2] = {0, 0};  // same with powers +-1
};
SurjectivityReport check_surjectivity(const SymMatrix& a, const SymMatrix& b, double gamma, const Tolerances& tol = {});
TheoremReport to_report(const SurjectivityReport& s, const Tolerances& tol = {});

struct HeinzRow {
  double nu;
  double lhs;  // ||L2^nu S L1^-nu||
  double rhs;  // C^nu ||S||^(1-nu)
};
struct HeinzReport {
  double c = 0;  // ||L2 S L1^-1||
  double norm_s = 0;
  std::vector<HeinzRow> rows;
  double endpoint_zero = 0;
  double endpoint_one = 0;
  double max_excess = 0;  // max lhs - rhs
  double tolerance = 0;
  bool holds = false;
};
/// Interpolation inequality for positive definite L1, L2; S may be rectangular.
HeinzReport check_heinz(const SymMatrix& l1, const SymMatrix& l2, const Matrix& s, const std::vector<double>& nu_grid,
                        const Tolerances& tol = {});
TheoremReport to_report(const HeinzReport& h, const Tolerances& tol = {});
TheoremReport to_report(const FormSumReport& f, const Tolerances& tol = {});

std::vector<double> linspace(double lo, double hi, int points);

}  // namespace gapmm
