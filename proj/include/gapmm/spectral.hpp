#pragma once

#include "gapmm/symmat.hpp"

namespace gapmm {

/// Where eigenvalues sitting on the split point go.
enum class Boundary {
  reject,       // GapTooClose if any eigenvalue lies within gap_tol of gamma
  assign_lower  // eigenvalues <= gamma + gap_tol belong to the lower part
};

struct SpectralSplit {
  double gamma = 0.0;
  Matrix basis_p;  // orthonormal eigenvectors with eigenvalue > gamma
  Matrix basis_m;
  Vector values_p;  // nondecreasing, matching basis_p columns
  Vector values_m;
  Matrix Pp;
  Matrix Pm;
  int rank_p() const { return static_cast<int>(basis_p.cols()); }
  int rank_m() const { return static_cast<int>(basis_m.cols()); }
  int dim() const { return static_cast<int>(Pp.rows()); }
};

double gap_tolerance(const SymMatrix& a, const Tolerances& tol);

SpectralSplit split(const SymMatrix& a, double gamma, const Tolerances& tol = {},
                    Boundary boundary = Boundary::reject);
SpectralSplit split(const SymMatrix& a, const EigenDecomposition& e, double gamma,
                    const Tolerances& tol = {}, Boundary boundary = Boundary::reject);

struct GapWindow {
  double c;  // -infinity when no eigenvalue lies at or below `around`
  double d;  // +infinity when none lies above
};
/// Maximal eigenvalue-free interval containing `around`; InsideSpectrum if
/// `around` is within gap_tol of an eigenvalue.
GapWindow find_gap(const SymMatrix& a, double around, const Tolerances& tol = {});

/// W^T B W for a frame with orthonormal columns.
SymMatrix compress(const SymMatrix& b, const Matrix& frame, const Tolerances& tol = {});

/// Eigenvalues of B restricted to Ran of the split's upper projector.
Vector part_spectrum(const SymMatrix& b, const SpectralSplit& s, const Tolerances& tol = {});
/// k-th (1-based) eigenvalue of that restriction.
double part_eigenvalue(const SymMatrix& b, const SpectralSplit& s, int k, const Tolerances& tol = {});

/// Ran Q+ written as the graph {f + X f : f in Ran P+} of X : Ran P+ -> Ran P-.
struct GraphData {
  Matrix X;  // rank_m x rank_p in the reduced bases of the A split
  Matrix Y;  // n x n skew: f -> X f on Ran P+, g -> -X^* g on Ran P-
  double normX = 0.0;
  double dist = 0.0;  // ||P+ - Q+||
};
GraphData graph_operator(const SpectralSplit& a_split, const SpectralSplit& b_split,
                         const Tolerances& tol = {});

struct GraphIdentityReport {
  double repr_first = 0;   // Q+ as block matrix built from (I + X*X)^{-1}
  double repr_second = 0;  // Q+ as block matrix built from (I + XX*)^{-1}
  double i_minus_y = 0;    // (I - Y)(I + Y) = diag(I + X*X, I + XX*)
  double compressed = 0;   // P+ Q+ |Ran P+ = (I + X*X)^{-1}
  double distance = 0;     // ||P+ - Q+|| = ||X|| / sqrt(1 + ||X||^2)
  double skew = 0;         // ||Y + Y^T||
  double pq_minus = 0;     // ||P+ Q-||, never above dist
  double dist = 0;
  double tolerance = 0;
  double max_residual() const;
  bool passed() const;
};
GraphIdentityReport verify_graph_identities(const GraphData& g, const SpectralSplit& a_split,
                                            const SpectralSplit& b_split, const Tolerances& tol = {});

}  // namespace gapmm
