#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gapmm/spectral.hpp"

namespace gapmm {

enum class MinimaxStatus { pass, refined_pass, fail };
const char* to_string(MinimaxStatus s);

struct MinimaxConfig {
  int probe_trials = 500;
  std::uint64_t seed = 0;
  int refine_iters = 200;
  bool form_path = true;
  Boundary boundary = Boundary::reject;
  Tolerances tol;
};

struct MinimaxReport {
  int k = 0;
  double direct = 0;     // k-th eigenvalue of B on Ran Q+
  double candidate = 0;  // inner sup on P+ span{psi_1..psi_k} (+inf if rank deficient)
  double form_value = 0; // same sup evaluated through the form
  double probe_min = 0;
  int probes = 0;
  std::optional<double> refined;
  MinimaxStatus status = MinimaxStatus::fail;
  double tolerance = 0;
};

/// lambda_max of B compressed to span(Mp) + span(basis_m).
double inner_sup(const SymMatrix& b, const Matrix& mp, const Matrix& basis_m, const Tolerances& tol = {});

struct ProbeResult {
  double min_value;
  Matrix argmin;  // n x k frame inside Ran P+
};

/// The inf-sup over k-dimensional subspaces of Ran P+, with all data the
/// repeated evaluations need cached in the eigenbasis of A.
class MinimaxEngine {
 public:
  MinimaxEngine(const SymMatrix& b, SpectralSplit a_split, SpectralSplit b_split, MinimaxConfig cfg = {});

  int max_k() const;
  const SpectralSplit& a_split() const { return as_; }
  const SpectralSplit& b_split() const { return bs_; }
  double direct(int k) const;

  // Frames below are given by coordinates G (rank_p x k, orthonormal
  // columns) in the basis of Ran P+.
  double sup(const Matrix& g) const;
  double form_sup(const Matrix& g) const;
  Matrix candidate(int k) const;
  ProbeResult probe(int k, int trials, std::uint64_t seed) const;
  double refine(const Matrix& start, int iters, Matrix* best = nullptr) const;

  MinimaxReport verify(int k) const;

  Matrix to_coords(const Matrix& frame) const;
  Matrix from_coords(const Matrix& g) const { return as_.basis_p * g; }

 private:
  double top_eigenvalue(const Matrix& g, const Matrix& pp, const Matrix& pm, const Matrix& mm) const;

  SymMatrix b_;
  SpectralSplit as_;
  SpectralSplit bs_;
  MinimaxConfig cfg_;
  Matrix bpp_, bpm_, bmm_;
  Matrix fpp_, fpm_, fmm_;
  Vector direct_;
  double b_norm_ = 0;
};

/// Orthonormal frame for P+ span{psi_1..psi_k}, psi_j the eigenvectors of B
/// on Ran Q+. RankDeficient when the projection loses rank.
Matrix candidate_subspace(const SymMatrix& b, const SpectralSplit& a_split, const SpectralSplit& b_split, int k,
                          const Tolerances& tol = {});
/// Haar-random k-frames in Ran P+; trial i is seeded with seed ^ i.
ProbeResult probe(const SymMatrix& b, const SpectralSplit& a_split, int k, int trials, std::uint64_t seed);
/// Derivative-free descent by Givens rotations inside Ran P+.
double refine(const SymMatrix& b, const SpectralSplit& a_split, const Matrix& start, int iters);
MinimaxReport verify_minimax(const SymMatrix& a, const SymMatrix& b, double gamma, int k,
                             const MinimaxConfig& cfg = {});

}  // namespace gapmm
