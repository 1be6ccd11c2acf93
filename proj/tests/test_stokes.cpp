#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gapmm/stokes.hpp"
#include "gapmm/theorems.hpp"
#include "helpers.hpp"

using namespace gapmm;

TEST_CASE("1D Laplacian on three interior points") {
  Grid g = make_grid(1, 3);
  CHECK(g.h == 0.25);
  auto parts = build_laplacian(g);
  const double h2 = g.h * g.h;
  for (int i = 0; i < 3; ++i) {
    CHECK(parts.L(i, i) == doctest::Approx(2.0 / h2));
    if (i + 1 < 3) CHECK(parts.L(i, i + 1) == doctest::Approx(-1.0 / h2));
  }
  CHECK(parts.L(0, 2) == 0.0);
  Vector ev = eigenvalues(parts.L);
  for (int k = 1; k <= 3; ++k) CHECK(ev(k - 1) == doctest::Approx((2.0 - 2.0 * std::cos(k * M_PI / 4.0)) / h2));
  CHECK((parts.G * Vector::Zero(3)).norm() == 0.0);
  CHECK((parts.G.transpose() * parts.G - parts.L.mat()).norm() <= 1e-12 * parts.L.frobenius());
}

TEST_CASE("2D Laplacian is the 5-point stencil per component") {
  Grid g = make_grid(2, 4);
  auto parts = build_laplacian(g);
  SymMatrix s = scalar_laplacian(g);
  const int n = g.nodes();
  CHECK(parts.L.dim() == 2 * n);
  CHECK((parts.L.mat().topLeftCorner(n, n) - s.mat()).norm() <= 1e-12 * s.frobenius());
  CHECK(parts.L.mat().topRightCorner(n, n).norm() == 0.0);
  const double h2 = g.h * g.h;
  CHECK(s(5, 5) == doctest::Approx(4.0 / h2));
  CHECK(s(5, 6) == doctest::Approx(-1.0 / h2));
  CHECK(s(5, 9) == doctest::Approx(-1.0 / h2));
  CHECK(s(5, 10) == 0.0);
}

TEST_CASE("mesh convergence of the first Dirichlet eigenvalue") {
  auto rows = mesh_convergence(2, {8, 12, 16, 24}, 1.0);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].error < rows[i - 1].error);
    CHECK(rows[i].order >= 1.8);
  }
  CHECK(rows.back().value == doctest::Approx(2 * M_PI * M_PI).epsilon(5e-3));
}

TEST_CASE("decoupled Stokes blocks") {
  Grid g = make_grid(2, 5);
  StokesInstance st = assemble_stokes(g, 0.7, 0.0);
  Vector ev = eigenvalues(st.B);
  Vector lap = eigenvalues(st.L);
  const int cells = g.cells();
  for (int i = 0; i < cells; ++i) CHECK(std::abs(ev(i)) <= 1e-12);
  for (int i = 0; i < lap.size(); ++i) CHECK(ev(cells + i) == doctest::Approx(0.7 * lap(i)).epsilon(1e-12));
}

TEST_CASE("tiny 1D Stokes matrix against a hand assembly") {
  const double nu = 1.3, vs = 0.8, h = 1.0 / 3.0;
  StokesInstance st = assemble_stokes(make_grid(1, 2), nu, vs);
  REQUIRE(st.B.dim() == 5);
  Matrix d(3, 2);
  d << 1, 0, -1, 1, 0, -1;
  d /= h;
  Matrix b = Matrix::Zero(5, 5);
  b.topLeftCorner(2, 2) = nu * d.transpose() * d;
  b.topRightCorner(2, 3) = -vs * d.transpose();
  b.bottomLeftCorner(3, 2) = -vs * d;
  Eigen::SelfAdjointEigenSolver<Matrix> oracle(b);
  CHECK((eigenvalues(st.B) - oracle.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-12 * oracle.eigenvalues().cwiseAbs().maxCoeff());
  CHECK(st.B.mat() == st.B.mat().transpose());
  CHECK(eigenvalues(st.B)(0) < 0.0);
}

TEST_CASE("discrete divergence constant") {
  StokesInstance one = assemble_stokes(make_grid(1, 10), 1.0, 1.0);
  CHECK(measure_div_constant(one) == 1.0);
  for (int p : {4, 7}) {
    StokesInstance st = assemble_stokes(make_grid(2, p), 1.0, 1.0);
    const double ch = measure_div_constant(st);
    CHECK(ch <= 2.0 + 1e-9);
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> oracle(st.D.transpose() * st.D, st.G.transpose() * st.G);
    CHECK(ch == doctest::Approx(oracle.eigenvalues().maxCoeff()).epsilon(1e-9));
  }
}

TEST_CASE("Stokes eigenvalue bounds") {
  StokesConfig cfg;
  cfg.k_max = 5;
  auto zero = verify_stokes_bounds(assemble_stokes(make_grid(1, 12), 1.0, 0.0), cfg);
  CHECK(zero.report.passed());
  for (const auto& row : zero.rows) CHECK(row.value == doctest::Approx(row.lower).epsilon(1e-12));

  auto one = verify_stokes_bounds(assemble_stokes(make_grid(1, 16), 1.0, 0.5), cfg);
  CHECK(one.report.passed());
  CHECK(one.c_h == 1.0);
  for (const auto& row : one.rows) {
    CHECK(row.lower <= row.value);
    CHECK(row.value <= row.upper);
  }
  CHECK(one.negative_count > 0);

  cfg.k_max = 6;
  auto two = verify_stokes_bounds(assemble_stokes(make_grid(2, 12), 0.1, 0.3), cfg);
  CHECK(two.report.passed());
  CHECK(two.report.minimax.size() == 6);
  for (const auto& m : two.report.minimax) CHECK(m.status != MinimaxStatus::fail);
}

TEST_CASE("coupling strength continuity") {
  auto r = check_vstar_lipschitz(make_grid(1, 12), 1.0, linspace(0.0, 1.0, 11), 4);
  CHECK(r.passed());
  auto r2 = check_vstar_lipschitz(make_grid(2, 5), 0.1, linspace(0.0, 1.0, 6), 3);
  CHECK(r2.passed());
}

TEST_CASE("dense budget") {
  CHECK_THROWS_AS(assemble_stokes(make_grid(2, 40), 1.0, 1.0), BudgetExceeded);
  CHECK_THROWS_AS(assemble_stokes(make_grid(1, 60), 1.0, 1.0, 100), BudgetExceeded);
  CHECK_NOTHROW(assemble_stokes(make_grid(1, 60), 1.0, 1.0, 121));
}
