#pragma once

#include <cstdint>
#include <vector>

#include "gapmm/minimax.hpp"
#include "gapmm/report.hpp"

namespace gapmm {

/// Uniform grid on the unit box with `points` interior nodes per axis.
/// Velocities live on the nodes, the scalar multiplier on the cells.
struct Grid {
  int space_dim = 1;
  int points = 2;
  double h = 1.0 / 3.0;
  int nodes() const;  // interior nodes N
  int cells() const;  // (points + 1)^space_dim
  int edges() const;  // difference quotients per velocity component
};
Grid make_grid(int space_dim, int points);

struct LaplacianParts {
  SymMatrix L;  // vector Dirichlet Laplacian, n N x n N
  Matrix G;     // forward-difference gradient of each component, L = G^T G
};
LaplacianParts build_laplacian(const Grid& grid);
/// Scalar 3-point / 5-point Dirichlet Laplacian.
SymMatrix scalar_laplacian(const Grid& grid);
/// Cell divergence of nodal velocities, cells x n N.
Matrix build_divergence(const Grid& grid);

struct StokesInstance {
  Grid grid;
  double nu = 1.0;
  double vstar = 0.0;
  SymMatrix L;
  Matrix G;
  Matrix D;     // divergence; the multiplier gradient is -D^T
  SymMatrix A;  // diag(nu L, 0)
  SymMatrix V;  // coupling [[0, -v* D^T], [-v* D, 0]]
  SymMatrix B;  // A + V
  double c_h = 1.0;
  int velocity_dim() const { return L.dim(); }
};
/// BudgetExceeded when the block matrix would exceed `size_cap`.
StokesInstance assemble_stokes(const Grid& grid, double nu, double vstar, int size_cap = 2000);
/// max ||D u||^2 / ||G u||^2.
double measure_div_constant(const StokesInstance& inst);

struct StokesConfig {
  int k_max = 6;
  bool run_minimax = true;
  int probe_trials = 64;
  std::uint64_t seed = 0;
  int form_samples = 200;
  std::vector<double> eps_grid{0.25, 0.5, 1.0, 2.0, 4.0};
  Tolerances tol;
};

struct StokesRow {
  int k;
  double lower;  // nu lambda_k(L)
  double value;  // lambda_k of the positive part of B
  double upper;  // nu lambda_k(L) + c_h v*^2 / nu
};

struct StokesResult {
  TheoremReport report;
  std::vector<StokesRow> rows;
  double c_h = 1.0;
  int negative_count = 0;
  int near_full = 0;  // within 10% of -v*^2/nu
  int near_half = 0;  // within 10% of -v*^2/(2 nu)
};
StokesResult verify_stokes_bounds(const StokesInstance& inst, const StokesConfig& cfg = {});

struct ConvergenceRow {
  int points;
  double h;
  double value;  // nu lambda_1(L)
  double error;  // against the continuum value
  double order;  // observed order against the previous row; NaN on the first
};
/// First eigenvalue of the scalar Laplacian against n pi^2.
std::vector<ConvergenceRow> mesh_convergence(int space_dim, const std::vector<int>& points, double nu);

/// Positive eigenvalues of B along a grid of coupling strengths against the
/// Lipschitz estimate for off-diagonal forms.
TheoremReport check_vstar_lipschitz(const Grid& grid, double nu, const std::vector<double>& vstars, int k_max,
                                    const Tolerances& tol = {});

}  // namespace gapmm
