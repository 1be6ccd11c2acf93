#include "gapmm/symmat.hpp"

#include <cmath>
#include <cstdlib>

namespace gapmm {

Tolerances Tolerances::scaled(double f) const {
  Tolerances t = *this;
  for (double* p : {&t.recon, &t.ortho, &t.form, &t.gap, &t.graph, &t.sv, &t.rank, &t.minimax,
                    &t.negativity, &t.offdiag, &t.block_diag, &t.identity, &t.heinz,
                    &t.heinz_endpoint, &t.pos_def, &t.projector_bound, &t.offdiag_dist,
                    &t.lipschitz, &t.route, &t.stokes})
    *p *= f;
  return t;
}

Tolerances Tolerances::uniform(double v) {
  Tolerances t;
  for (double* p : {&t.recon, &t.ortho, &t.form, &t.gap, &t.graph, &t.sv, &t.rank, &t.minimax,
                    &t.negativity, &t.offdiag, &t.block_diag, &t.identity, &t.heinz,
                    &t.heinz_endpoint, &t.pos_def, &t.projector_bound, &t.offdiag_dist,
                    &t.lipschitz, &t.route, &t.stokes})
    *p = v;
  return t;
}

Tolerances Tolerances::from_env() {
  const char* s = std::getenv("GAPMM_TOL_SCALE");
  if (!s || !*s) return {};
  char* end = nullptr;
  double f = std::strtod(s, &end);
  if (end == s || !std::isfinite(f) || f <= 0) throw DomainError("GAPMM_TOL_SCALE must be a positive number");
  return Tolerances{}.scaled(f);
}

SymMatrix::SymMatrix(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("symmetric matrix must be square");
  m_ = m;
  const Eigen::Index n = m.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double v = 0.5 * (m(i, j) + m(j, i));
      m_(i, j) = v;
      m_(j, i) = v;
    }
}

SymMatrix SymMatrix::zero(int n) { return SymMatrix(Matrix::Zero(n, n)); }
SymMatrix SymMatrix::identity(int n) { return SymMatrix(Matrix::Identity(n, n)); }
SymMatrix SymMatrix::diagonal(const Vector& d) { return SymMatrix(Matrix(d.asDiagonal())); }

static void require_same(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("matrix dimensions differ");
}

SymMatrix SymMatrix::operator+(const SymMatrix& o) const {
  require_same(*this, o);
  return SymMatrix(Matrix(m_ + o.m_));
}
SymMatrix SymMatrix::operator-(const SymMatrix& o) const {
  require_same(*this, o);
  return SymMatrix(Matrix(m_ - o.m_));
}
SymMatrix SymMatrix::operator-() const { return SymMatrix(Matrix(-m_)); }
SymMatrix SymMatrix::operator*(double s) const { return SymMatrix(Matrix(s * m_)); }
SymMatrix SymMatrix::shifted(double s) const {
  Matrix r = m_;
  r.diagonal().array() += s;
  return SymMatrix(r);
}

EigenDecomposition eig_sym(const SymMatrix& m, const EigenOptions& opts) {
  if (m.dim() <= opts.jacobi_max_dim) return jacobi_eig(m, opts);
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.mat());
  if (es.info() != Eigen::Success) throw IterationLimit("tridiagonal QR did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

Vector eigenvalues(const SymMatrix& m) {
  if (m.dim() == 0) return Vector(0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.mat(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw IterationLimit("tridiagonal QR did not converge");
  return es.eigenvalues();
}

double max_eigenvalue(const SymMatrix& m) {
  if (m.dim() == 0) throw DimensionMismatch("empty matrix has no eigenvalues");
  return eigenvalues(m)(m.dim() - 1);
}

double min_eigenvalue(const SymMatrix& m) {
  if (m.dim() == 0) throw DimensionMismatch("empty matrix has no eigenvalues");
  return eigenvalues(m)(0);
}

SymMatrix apply_fn(const EigenDecomposition& e, const std::function<double(double)>& f) {
  Vector fv(e.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) {
    fv(i) = f(e.values(i));
    if (!std::isfinite(fv(i)))
      throw DomainError("function not finite at eigenvalue " + std::to_string(e.values(i)));
  }
  return SymMatrix(Matrix(e.vectors * fv.asDiagonal() * e.vectors.transpose()));
}

SymMatrix apply_fn(const SymMatrix& m, const std::function<double(double)>& f) {
  return apply_fn(eig_sym(m), f);
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Matrix gram = m.rows() >= m.cols() ? Matrix(m.transpose() * m) : Matrix(m * m.transpose());
  return std::sqrt(std::max(0.0, max_eigenvalue(SymMatrix(gram))));
}

PsdCheck psd_leq(const SymMatrix& lhs, const SymMatrix& rhs, double tol) {
  double margin = min_eigenvalue(rhs - lhs);
  return {margin >= -tol, margin};
}

QuadraticForm::QuadraticForm(const SymMatrix& g) : gen_(g) {
  EigenDecomposition e = eig_sym(g);
  half_ = apply_fn(e, [](double x) { return std::sqrt(std::abs(x)); });
  sign_ = apply_fn(e, [](double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); });
}

SymMatrix QuadraticForm::matrix() const {
  return SymMatrix(Matrix(half_.mat() * sign_.mat() * half_.mat()));
}

double form_eval(const QuadraticForm& f, const Vector& x, const Vector& y) {
  if (x.size() != f.half().dim() || y.size() != f.half().dim())
    throw DimensionMismatch("form argument has wrong dimension");
  Vector hx = f.half().mat() * x;
  Vector hy = f.half().mat() * y;
  return hx.dot(f.signop().mat() * hy);
}

FormSumReport check_form_sum(const SymMatrix& lambda, const SymMatrix& k) {
  require_same(lambda, k);
  const int n = lambda.dim();
  QuadraticForm sum(lambda + k), base(lambda), pert(k);
  FormSumReport r{0.0, 0.0, 1.0 + spectral_norm(lambda) + spectral_norm(k)};
  Vector x = Vector::Zero(n), y = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    x.setZero();
    x(i) = 1.0;
    for (int j = 0; j < n; ++j) {
      y.setZero();
      y(j) = 1.0;
      double diff = form_eval(sum, x, y) - form_eval(base, x, y);
      r.operator_residual = std::max(r.operator_residual, std::abs(diff - k(i, j)));
      r.form_residual = std::max(r.form_residual, std::abs(diff - form_eval(pert, x, y)));
    }
  }
  return r;
}

}  // namespace gapmm
