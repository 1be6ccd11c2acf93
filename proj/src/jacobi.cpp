#include <algorithm>
#include <cmath>
#include <numeric>

#include "gapmm/symmat.hpp"

namespace gapmm {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150)
    t = 0.5 / theta;
  else
    t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double g = a(r, p), h = a(r, q);
    const double np = g - s * (h + g * tau);
    const double nq = h + s * (g - h * tau);
    a(r, p) = np;
    a(p, r) = np;
    a(r, q) = nq;
    a(q, r) = nq;
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    const double g = v(r, p), h = v(r, q);
    v(r, p) = g - s * (h + g * tau);
    v(r, q) = h + s * (g - h * tau);
  }
}

}  // namespace

EigenDecomposition jacobi_eig(const SymMatrix& m, const EigenOptions& opts) {
  const Eigen::Index n = m.dim();
  Matrix a = m.mat();
  Matrix v = Matrix::Identity(n, n);
  const double stop = opts.threshold * a.norm();

  bool converged = false;
  for (int sweep = 0; sweep <= opts.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= stop) {
      converged = true;
      break;
    }
    if (sweep == opts.max_sweeps) break;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Entries negligible against both diagonal entries are dropped once
        // the early sweeps are done, which guarantees termination.
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
  }
  if (!converged) throw IterationLimit("Jacobi sweep budget exhausted");

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });
  EigenDecomposition e{Vector(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    e.values(i) = a(order[i], order[i]);
    e.vectors.col(i) = v.col(order[i]);
  }
  return e;
}

}  // namespace gapmm
