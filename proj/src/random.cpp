#include "gapmm/random.hpp"

namespace gapmm {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ index);
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Matrix gaussian_matrix(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = nd(rng);
  return m;
}

Matrix orthonormalize(const Matrix& m) {
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
  // Sign convention R_ii >= 0 makes the map from Gaussian frames Haar.
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

Matrix haar_frame(Rng& rng, int rows, int cols) { return orthonormalize(gaussian_matrix(rng, rows, cols)); }

SymMatrix random_symmetric(Rng& rng, int n, double norm) {
  Matrix g = gaussian_matrix(rng, n, n);
  SymMatrix s(Matrix(g + g.transpose()));
  double current = spectral_norm(s);
  return current > 0 ? s * (norm / current) : s;
}

}  // namespace gapmm
