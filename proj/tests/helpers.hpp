#pragma once

#include <cmath>

#include "gapmm/random.hpp"
#include "gapmm/symmat.hpp"

namespace testing {

using gapmm::Matrix;
using gapmm::Rng;
using gapmm::SymMatrix;
using gapmm::Vector;

// Q diag(ev) Q^T with a Haar-random Q.
inline SymMatrix with_spectrum(Rng& rng, const Vector& ev) {
  Matrix q = gapmm::haar_frame(rng, static_cast<int>(ev.size()), static_cast<int>(ev.size()));
  return SymMatrix(Matrix(q * ev.asDiagonal() * q.transpose()));
}

// n eigenvalues outside (c, d), the first n_low below c.
inline Vector gapped_values(Rng& rng, int n, int n_low, double c, double d, double spread = 3.0) {
  Vector ev(n);
  for (int i = 0; i < n; ++i)
    ev(i) = i < n_low ? c - gapmm::uniform(rng, 0.0, spread) : d + gapmm::uniform(rng, 0.0, spread);
  return ev;
}

// Off-diagonal part of a random symmetric matrix with respect to the
// eigenspaces of `a` above and below gamma, scaled to norm `norm`.
inline SymMatrix offdiagonal(Rng& rng, const SymMatrix& a, double gamma, double norm) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.mat());
  Matrix p = Matrix::Zero(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i)
    if (es.eigenvalues()(i) > gamma) p += es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
  Matrix g = gapmm::gaussian_matrix(rng, a.dim(), a.dim());
  Matrix q = Matrix::Identity(a.dim(), a.dim()) - p;
  Matrix v = p * g * q;
  v += v.transpose().eval();
  const double s = Eigen::JacobiSVD<Matrix>(v).singularValues()(0);
  return SymMatrix(Matrix(v * (norm / s)));
}

inline Vector unit_vector(Rng& rng, int n) {
  Vector x = gapmm::gaussian_matrix(rng, n, 1).col(0);
  return x / x.norm();
}

}  // namespace testing
