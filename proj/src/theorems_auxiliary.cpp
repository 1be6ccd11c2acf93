#include <cmath>

#include "gapmm/theorems.hpp"
#include "theorem_util.hpp"

namespace gapmm {

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> v;
  if (points == 1) return {lo};
  for (int i = 0; i < points; ++i) v.push_back(lo + (hi - lo) * i / (points - 1));
  return v;
}

double radius_threshold_operator(double b) { return (1.0 - 2.0 * b - b * b) / (1.0 - b * b); }
double radius_bound_operator(double p, double b) { return p + b * (p + (1.0 + b) / (1.0 - b)); }
double radius_threshold_sum(double b) { return 1.0 - 2.0 * b; }
double radius_bound_sum(double p, double b) { return (p + b) / (1.0 - b); }

SurjectivityReport check_surjectivity(const SymMatrix& a, const SymMatrix& b, double gamma, const Tolerances& tol) {
  SpectralSplit as = split(a, gamma, tol);
  SpectralSplit bs = split(b, gamma, tol);
  SurjectivityReport r;
  if (as.rank_p() > 0) {
    Matrix t = as.basis_p.transpose() * bs.Pp * as.basis_p;
    r.sigma_min = std::sqrt(std::max(0.0, min_eigenvalue(SymMatrix(Matrix(t.transpose() * t)))));
  }
  Matrix pqm = as.Pp * bs.Pm;
  r.pq_minus = spectral_norm(pqm);
  if (r.pq_minus < 1.0) r.neumann_consistent = r.sigma_min >= 1.0 - r.pq_minus - tol.sv;
  EigenDecomposition e = eig_sym(a.shifted(-gamma));
  for (int alpha = 0; alpha < 2; ++alpha) {
    auto weight = [&](double p) {
      return apply_fn(e, [=](double x) { return std::pow(std::abs(x) + alpha, p); }).mat();
    };
    r.weighted_form[alpha] = spectral_norm(Matrix(weight(0.5) * pqm * weight(-0.5)));
    r.weighted_operator[alpha] = spectral_norm(Matrix(weight(1.0) * pqm * weight(-1.0)));
  }
  return r;
}

TheoremReport to_report(const SurjectivityReport& s, const Tolerances& tol) {
  TheoremReport r;
  r.id = "surjectivity";
  r.hypothesis("||P+ Q-|| < 1", s.pq_minus < 1.0, 1.0 - s.pq_minus);
  r.conclude("P+ Q+ bijective on Ran P+", tol.sv - s.sigma_min, 0.0);
  r.conclude("sigma_min >= 1 - ||P+ Q-||", s.neumann_consistent ? 0.0 : 1.0, 0.0);
  for (int alpha = 0; alpha < 2; ++alpha)
    r.notes.push_back("weighted quantity alpha=" + std::to_string(alpha) + ": form " +
                      std::to_string(s.weighted_form[alpha]) + ", operator " +
                      std::to_string(s.weighted_operator[alpha]) + " (sufficient when < 1)");
  return r;
}

HeinzReport check_heinz(const SymMatrix& l1, const SymMatrix& l2, const Matrix& s, const std::vector<double>& grid,
                        const Tolerances& tol) {
  if (s.rows() != l2.dim() || s.cols() != l1.dim()) throw DimensionMismatch("S must map the space of L1 to that of L2");
  EigenDecomposition e1 = eig_sym(l1), e2 = eig_sym(l2);
  if (e1.values(0) <= tol.pos_def || e2.values(0) <= tol.pos_def)
    throw NotPositiveDefinite("Heinz inequality needs positive definite operators");
  auto power = [](const EigenDecomposition& e, double p) {
    return apply_fn(e, [=](double x) { return std::pow(x, p); }).mat();
  };
  HeinzReport h;
  h.c = spectral_norm(Matrix(l2.mat() * s * power(e1, -1.0)));
  h.norm_s = spectral_norm(s);
  h.tolerance = tol.heinz * (1.0 + h.c + h.norm_s);
  h.max_excess = -std::numeric_limits<double>::infinity();
  for (double nu : grid) {
    double lhs = spectral_norm(Matrix(power(e2, nu) * s * power(e1, -nu)));
    double rhs = std::pow(h.c, nu) * std::pow(h.norm_s, 1.0 - nu);
    h.rows.push_back({nu, lhs, rhs});
    h.max_excess = std::max(h.max_excess, lhs - rhs);
  }
  h.endpoint_zero = std::abs(spectral_norm(Matrix(power(e2, 0.0) * s * power(e1, -0.0))) - h.norm_s);
  h.endpoint_one = std::abs(spectral_norm(Matrix(power(e2, 1.0) * s * power(e1, -1.0))) - h.c);
  h.holds = h.max_excess <= h.tolerance && h.endpoint_zero <= tol.heinz_endpoint * (1.0 + h.norm_s) &&
            h.endpoint_one <= tol.heinz_endpoint * (1.0 + h.c);
  return h;
}

TheoremReport to_report(const HeinzReport& h, const Tolerances& tol) {
  TheoremReport r;
  r.id = "heinz";
  r.hypothesis("L1, L2 positive definite", true, 0.0);
  r.conclude("interpolation inequality", h.max_excess, h.tolerance);
  r.conclude("endpoint nu=0", h.endpoint_zero, tol.heinz_endpoint * (1.0 + h.norm_s));
  r.conclude("endpoint nu=1", h.endpoint_one, tol.heinz_endpoint * (1.0 + h.c));
  return r;
}

TheoremReport to_report(const FormSumReport& f, const Tolerances& tol) {
  TheoremReport r;
  r.id = "form-sum";
  r.conclude("form(L+K) - form(L) = <x, K y>", f.operator_residual, tol.form * f.scale);
  r.conclude("form(L+K) - form(L) = form(K)", f.form_residual, tol.form * f.scale);
  return r;
}

}  // namespace gapmm
