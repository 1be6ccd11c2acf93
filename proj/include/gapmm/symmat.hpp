#pragma once

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <string>

#include "gapmm/errors.hpp"
#include "gapmm/tolerances.hpp"

namespace gapmm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Real symmetric matrix. Construction averages (i,j) and (j,i), so the
/// stored entries are exactly symmetric.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Matrix& m);
  static SymMatrix zero(int n);
  static SymMatrix identity(int n);
  static SymMatrix diagonal(const Vector& d);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  double frobenius() const { return m_.norm(); }

  SymMatrix operator+(const SymMatrix& o) const;
  SymMatrix operator-(const SymMatrix& o) const;
  SymMatrix operator-() const;
  SymMatrix operator*(double s) const;
  SymMatrix shifted(double s) const;  // M + s I

 private:
  Matrix m_;
};

inline SymMatrix operator*(double s, const SymMatrix& m) { return m * s; }

struct EigenDecomposition {
  Vector values;   // nondecreasing
  Matrix vectors;  // column i pairs with values(i)
};

struct EigenOptions {
  double threshold = 1e-14;  // off-diagonal Frobenius norm relative to ||M||_F
  int max_sweeps = 100;
  // Above this size full decompositions use Householder tridiagonalisation.
  int jacobi_max_dim = 160;
};

/// Cyclic Jacobi eigendecomposition; throws IterationLimit when the sweep
/// budget runs out.
EigenDecomposition jacobi_eig(const SymMatrix& m, const EigenOptions& opts = {});
EigenDecomposition eig_sym(const SymMatrix& m, const EigenOptions& opts = {});
/// Eigenvalues only, nondecreasing.
Vector eigenvalues(const SymMatrix& m);
double max_eigenvalue(const SymMatrix& m);
double min_eigenvalue(const SymMatrix& m);

/// Functional calculus Q diag(f(lambda)) Q^T. Throws DomainError when f is
/// not finite on the spectrum.
SymMatrix apply_fn(const EigenDecomposition& e, const std::function<double(double)>& f);
SymMatrix apply_fn(const SymMatrix& m, const std::function<double(double)>& f);

/// Largest singular value, via the eigenvalues of the smaller Gram matrix.
double spectral_norm(const Matrix& m);
inline double spectral_norm(const SymMatrix& m) { return spectral_norm(m.mat()); }

struct PsdCheck {
  bool holds;
  double margin;  // lambda_min(R - L)
};
/// L <= R in the Loewner order, up to tol.
PsdCheck psd_leq(const SymMatrix& lhs, const SymMatrix& rhs, double tol);

/// The closed form of a symmetric generator G, stored as |G|^{1/2} and sign(G).
class QuadraticForm {
 public:
  QuadraticForm() = default;
  explicit QuadraticForm(const SymMatrix& generator);
  const SymMatrix& generator() const { return gen_; }
  const SymMatrix& half() const { return half_; }
  const SymMatrix& signop() const { return sign_; }
  /// half^T signop half, the Gram matrix of the form on the standard basis.
  SymMatrix matrix() const;

 private:
  SymMatrix gen_;
  SymMatrix half_;
  SymMatrix sign_;
};

double form_eval(const QuadraticForm& f, const Vector& x, const Vector& y);

struct FormSumReport {
  double operator_residual;  // form(L+K) - form(L) - <x,Ky>
  double form_residual;      // form(L+K) - form(L) - form(K)
  double scale;              // 1 + ||L|| + ||K||
  bool passed(double tol) const {
    return operator_residual <= tol * scale && form_residual <= tol * scale;
  }
};
/// Max over standard basis probe pairs.
FormSumReport check_form_sum(const SymMatrix& lambda, const SymMatrix& k);

SymMatrix read_matrix(std::istream& in);
SymMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const SymMatrix& m);
void write_matrix_file(const std::string& path, const SymMatrix& m);

}  // namespace gapmm
