#include "gapmm/stokes.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gapmm/random.hpp"

namespace gapmm {

int Grid::nodes() const { return space_dim == 1 ? points : points * points; }
int Grid::cells() const { return space_dim == 1 ? points + 1 : (points + 1) * (points + 1); }
int Grid::edges() const { return space_dim == 1 ? points + 1 : 2 * (points + 1) * points; }

Grid make_grid(int space_dim, int points) {
  if (space_dim != 1 && space_dim != 2) throw DomainError("space dimension must be 1 or 2");
  if (points < 2) throw DomainError("at least 2 interior points per axis");
  return {space_dim, points, 1.0 / (points + 1)};
}

namespace {

// Scalar gradient: nodes -> edges, homogeneous Dirichlet values outside.
Matrix scalar_gradient(const Grid& g) {
  const int p = g.points;
  Matrix grad = Matrix::Zero(g.edges(), g.nodes());
  const double s = 1.0 / g.h;
  if (g.space_dim == 1) {
    for (int e = 0; e <= p; ++e) {
      if (e < p) grad(e, e) += s;
      if (e > 0) grad(e, e - 1) -= s;
    }
    return grad;
  }
  auto node = [p](int i, int j) { return i + p * j; };
  int row = 0;
  for (int j = 0; j < p; ++j)  // x-differences between (i-1, j) and (i, j)
    for (int i = 0; i <= p; ++i, ++row) {
      if (i < p) grad(row, node(i, j)) += s;
      if (i > 0) grad(row, node(i - 1, j)) -= s;
    }
  for (int i = 0; i < p; ++i)  // y-differences
    for (int j = 0; j <= p; ++j, ++row) {
      if (j < p) grad(row, node(i, j)) += s;
      if (j > 0) grad(row, node(i, j - 1)) -= s;
    }
  return grad;
}

Matrix block_diagonal(const Matrix& m, int copies) {
  Matrix r = Matrix::Zero(m.rows() * copies, m.cols() * copies);
  for (int c = 0; c < copies; ++c) r.block(c * m.rows(), c * m.cols(), m.rows(), m.cols()) = m;
  return r;
}

Vector positive_part(const SymMatrix& b, double tol) {
  Vector ev = eigenvalues(b);
  const double thr = tol * (1.0 + std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))));
  Eigen::Index first = 0;
  while (first < ev.size() && ev(first) <= thr) ++first;
  return ev.tail(ev.size() - first);
}

}  // namespace

SymMatrix scalar_laplacian(const Grid& g) {
  Matrix grad = scalar_gradient(g);
  return SymMatrix(Matrix(grad.transpose() * grad));
}

LaplacianParts build_laplacian(const Grid& g) {
  Matrix grad = block_diagonal(scalar_gradient(g), g.space_dim);
  return {SymMatrix(Matrix(grad.transpose() * grad)), grad};
}

Matrix build_divergence(const Grid& g) {
  const int p = g.points, n = g.nodes();
  if (g.space_dim == 1) return scalar_gradient(g);
  Matrix d = Matrix::Zero(g.cells(), 2 * n);
  auto node = [p](int i, int j) { return i + p * j; };
  auto inside = [p](int i, int j) { return i >= 0 && j >= 0 && i < p && j < p; };
  const double s = 0.5 / g.h;
  for (int j = 0; j <= p; ++j)
    for (int i = 0; i <= p; ++i) {
      const int cell = i + (p + 1) * j;
      // Corners of cell (i, j) are the nodes (i-1..i, j-1..j).
      for (int cj = j - 1; cj <= j; ++cj)
        for (int ci = i - 1; ci <= i; ++ci) {
          if (!inside(ci, cj)) continue;
          const double sx = ci == i ? s : -s;
          const double sy = cj == j ? s : -s;
          d(cell, node(ci, cj)) += sx;
          d(cell, n + node(ci, cj)) += sy;
        }
    }
  return d;
}

StokesInstance assemble_stokes(const Grid& grid, double nu, double vstar, int size_cap) {
  if (!(nu > 0)) throw DomainError("viscosity must be positive");
  if (!(vstar >= 0)) throw DomainError("coupling must be nonnegative");
  const int nv = grid.space_dim * grid.nodes(), np = grid.cells();
  if (nv + np > size_cap)
    throw BudgetExceeded("block matrix size " + std::to_string(nv + np) + " exceeds cap " + std::to_string(size_cap));
  StokesInstance s;
  s.grid = grid;
  s.nu = nu;
  s.vstar = vstar;
  LaplacianParts lp = build_laplacian(grid);
  s.L = lp.L;
  s.G = lp.G;
  s.D = build_divergence(grid);
  Matrix a = Matrix::Zero(nv + np, nv + np);
  a.topLeftCorner(nv, nv) = nu * s.L.mat();
  Matrix v = Matrix::Zero(nv + np, nv + np);
  v.topRightCorner(nv, np) = -vstar * s.D.transpose();
  v.bottomLeftCorner(np, nv) = -vstar * s.D;
  s.A = SymMatrix(a);
  s.V = SymMatrix(v);
  s.B = s.A + s.V;
  s.c_h = measure_div_constant(s);
  return s;
}

double measure_div_constant(const StokesInstance& inst) {
  // In one dimension the divergence is the gradient itself.
  if (inst.D.rows() == inst.G.rows() && inst.D.cols() == inst.G.cols() && inst.D == inst.G) return 1.0;
  Eigen::LLT<Matrix> llt(inst.L.mat());
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("Laplacian is not positive definite");
  Matrix w = llt.matrixL().solve(inst.D.transpose());  // L = R R^T, w = R^{-1} D^T
  return max_eigenvalue(SymMatrix(Matrix(w.transpose() * w)));
}

StokesResult verify_stokes_bounds(const StokesInstance& inst, const StokesConfig& cfg) {
  const Tolerances& tol = cfg.tol;
  StokesResult res;
  res.c_h = inst.c_h;
  TheoremReport& r = res.report;
  r.id = "stokes";
  Vector lap = eigenvalues(inst.L);
  Vector pos = positive_part(inst.B, tol.gap);
  if (cfg.k_max > pos.size() || cfg.k_max > lap.size())
    throw IndexOutOfRange("k_max exceeds the number of positive eigenvalues");

  const int nv = inst.velocity_dim();
  const Matrix& v = inst.V.mat();
  const double od = std::max(v.topLeftCorner(nv, nv).cwiseAbs().maxCoeff(),
                             v.bottomRightCorner(v.rows() - nv, v.cols() - nv).cwiseAbs().maxCoeff());
  r.hypothesis("coupling form vanishes on both blocks", od == 0.0, -od);
  r.hypothesis("viscosity positive", inst.nu > 0, inst.nu);
  r.notes.push_back("c_h = " + std::to_string(inst.c_h));

  const double shift = inst.vstar * inst.vstar / inst.nu;
  for (int k = 1; k <= cfg.k_max; ++k) {
    StokesRow row{k, inst.nu * lap(k - 1), pos(k - 1), inst.nu * lap(k - 1) + inst.c_h * shift};
    res.rows.push_back(row);
    const double mm = tol.minimax * (1.0 + std::abs(row.value));
    r.conclude("lower bound k=" + std::to_string(k), row.lower - row.value, mm);
    r.conclude("upper bound k=" + std::to_string(k), row.value - row.upper, tol.stokes);
    if (inst.c_h <= 1.0)
      r.conclude("upper bound v*^2/nu k=" + std::to_string(k), row.value - (row.lower + shift), tol.stokes);
  }

  Rng rng(derive_seed(cfg.seed, 0x5703e5));
  const int n = inst.B.dim();
  for (double eps : cfg.eps_grid) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < cfg.form_samples; ++i) {
      Vector f = gaussian_matrix(rng, n, 1).col(0);
      const double vf = f.dot(v * f);
      const double af = f.dot(inst.A.mat() * f);
      const double rhs = eps * inst.c_h * af + shift / eps * f.squaredNorm();
      worst = std::max(worst, (std::abs(vf) - rhs) / (1.0 + rhs));
    }
    r.conclude("relative form bound eps=" + std::to_string(eps), worst, tol.form);
  }

  if (cfg.run_minimax) {
    MinimaxConfig mc;
    mc.probe_trials = cfg.probe_trials;
    mc.seed = cfg.seed;
    mc.tol = tol;
    mc.boundary = Boundary::assign_lower;
    MinimaxEngine e(inst.B, split(inst.A, 0.0, tol, Boundary::assign_lower),
                    split(inst.B, 0.0, tol, Boundary::assign_lower), mc);
    for (int k = 1; k <= std::min(cfg.k_max, e.max_k()); ++k) r.add_minimax(e.verify(k));
  }

  Vector ev = eigenvalues(inst.B);
  const double full = -shift, half = -0.5 * shift;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) >= -tol.gap * (1.0 + std::abs(ev(i)))) continue;
    ++res.negative_count;
    if (std::abs(ev(i) - full) <= 0.1 * shift) ++res.near_full;
    if (std::abs(ev(i) - half) <= 0.1 * shift) ++res.near_half;
  }
  r.notes.push_back("negative eigenvalues: " + std::to_string(res.negative_count) + ", near -v*^2/nu: " +
                    std::to_string(res.near_full) + ", near -v*^2/(2nu): " + std::to_string(res.near_half));
  return res;
}

std::vector<ConvergenceRow> mesh_convergence(int space_dim, const std::vector<int>& points, double nu) {
  const double exact = nu * space_dim * std::numbers::pi * std::numbers::pi;
  std::vector<ConvergenceRow> rows;
  for (int p : points) {
    Grid g = make_grid(space_dim, p);
    ConvergenceRow row{p, g.h, nu * min_eigenvalue(scalar_laplacian(g)), 0.0, std::nan("")};
    row.error = std::abs(row.value - exact);
    if (!rows.empty()) row.order = std::log(rows.back().error / row.error) / std::log(rows.back().h / row.h);
    rows.push_back(row);
  }
  return rows;
}

TheoremReport check_vstar_lipschitz(const Grid& grid, double nu, const std::vector<double>& vstars, int k_max,
                                    const Tolerances& tol) {
  TheoremReport r;
  r.id = "stokes-coupling-lipschitz";
  double tmax = 0.0;
  for (double t : vstars) tmax = std::max(tmax, std::abs(t));
  StokesInstance unit = assemble_stokes(grid, nu, 1.0);
  // |v1[f]| <= eps c_h a[f] + ||f||^2 / (eps nu); choose b = eps c_h = 1 / (2 tmax).
  const double b = tmax > 0 ? 0.5 / tmax : 0.5;
  const double eps = b / unit.c_h;
  const double a = 1.0 / (eps * nu);
  r.hypothesis("form bound b < 1", b < 1.0, 1.0 - b);
  r.notes.push_back("a = " + std::to_string(a) + ", b = " + std::to_string(b));
  std::vector<Vector> parts;
  for (double t : vstars) parts.push_back(positive_part(unit.A + t * unit.V, tol.gap));
  for (int k = 1; k <= k_max; ++k) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vstars.size(); ++i)
      for (std::size_t j = 0; j < vstars.size(); ++j) {
        const double s = vstars[i], t = vstars[j];
        if (i == j || b * std::abs(t - s) > 1.0 - b * std::abs(s)) continue;
        const double ls = parts[i](k - 1), lt = parts[j](k - 1);
        const double denom = 1.0 - b * std::abs(s);
        const double bound = a * std::abs(t - s) / denom + b * std::abs(t - s) / denom * std::abs(ls);
        worst = std::max(worst, (std::abs(lt - ls) - bound) / (1.0 + std::max(std::abs(ls), std::abs(lt))));
      }
    r.conclude("Lipschitz k=" + std::to_string(k), worst, tol.lipschitz);
  }
  return r;
}

}  // namespace gapmm
