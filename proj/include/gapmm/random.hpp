#pragma once

#include <cstdint>
#include <random>

#include "gapmm/symmat.hpp"

namespace gapmm {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
/// Independent stream seed for item `index` under `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

double uniform(Rng& rng, double lo, double hi);
Matrix gaussian_matrix(Rng& rng, int rows, int cols);
/// Orthonormal basis of the column span (thin Householder QR).
Matrix orthonormalize(const Matrix& m);
/// Haar-distributed rows x cols frame with orthonormal columns.
Matrix haar_frame(Rng& rng, int rows, int cols);
/// Random symmetric matrix with spectral norm `norm`.
SymMatrix random_symmetric(Rng& rng, int n, double norm);

}  // namespace gapmm
