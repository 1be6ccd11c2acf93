#include "gapmm/perturb.hpp"

#include <algorithm>
#include <cmath>

namespace gapmm {

PosNegParts split_pos_neg(const SymMatrix& v) {
  EigenDecomposition e = eig_sym(v);
  return {apply_fn(e, [](double x) { return std::max(x, 0.0); }),
          apply_fn(e, [](double x) { return std::max(-x, 0.0); })};
}

DiagOffParts split_diag_offdiag(const SymMatrix& v, const SpectralSplit& s) {
  if (s.dim() != v.dim()) throw DimensionMismatch("split and perturbation dimensions differ");
  const Matrix& p = s.Pp;
  const Matrix& q = s.Pm;
  const Matrix& m = v.mat();
  return {SymMatrix(Matrix(p * m * p + q * m * q)), SymMatrix(Matrix(p * m * q + q * m * p))};
}

OffDiagonality off_diagonality(const SymMatrix& v, const SpectralSplit& s) {
  return {spectral_norm(Matrix(s.basis_p.transpose() * v.mat() * s.basis_p)),
          spectral_norm(Matrix(s.basis_m.transpose() * v.mat() * s.basis_m))};
}

RelBound min_operator_bound_a(const Matrix& v, const SymMatrix& a, double b) {
  if (v.rows() != a.dim() || v.cols() != a.dim()) throw DimensionMismatch("perturbation and operator differ");
  Matrix d = v.transpose() * v - b * b * a.mat() * a.mat();
  RelBound r;
  r.kind = BoundKind::operator_bound;
  r.b = b;
  r.a = std::sqrt(std::max(0.0, max_eigenvalue(SymMatrix(d))));
  r.a_tilde = r.a;
  return r;
}

double sandwich_bound(const SymMatrix& v, const SymMatrix& r, double b) {
  return std::max({max_eigenvalue(v - b * r), max_eigenvalue(-v - b * r), 0.0});
}

RelBound min_form_bound_a(const SymMatrix& v, const SymMatrix& a, double b, Branch branch) {
  RelBound r;
  r.kind = BoundKind::form_bound;
  r.branch = branch;
  r.b = b;
  if (branch == Branch::lower) {
    r.m = min_eigenvalue(a);
    r.a = sandwich_bound(v, a.shifted(std::abs(r.m) - r.m), b);
    r.a_tilde = r.a + b * (std::abs(r.m) - r.m);
  } else {
    r.m = max_eigenvalue(a);
    r.a = sandwich_bound(v, (-a).shifted(r.m + std::abs(r.m)), b);
    r.a_tilde = r.a + b * (r.m + std::abs(r.m));
  }
  return r;
}

}  // namespace gapmm
