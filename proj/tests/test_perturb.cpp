#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gapmm/perturb.hpp"
#include "helpers.hpp"

using namespace gapmm;
using namespace testing;

TEST_CASE("positive and negative parts") {
  Vector d(2);
  d << 2, -3;
  auto p = split_pos_neg(SymMatrix::diagonal(d));
  CHECK(p.positive(0, 0) == doctest::Approx(2.0));
  CHECK(std::abs(p.positive(1, 1)) < 1e-15);
  CHECK(p.negative(1, 1) == doctest::Approx(3.0));

  Rng rng(53);
  Vector ev(6);
  ev << 0.5, 1, 2, 3, 0, 4;
  auto psd = split_pos_neg(with_spectrum(rng, ev));
  CHECK(spectral_norm(psd.negative) <= 1e-14);

  for (int trial = 0; trial < 30; ++trial) {
    SymMatrix v = random_symmetric(rng, 1 + static_cast<int>(rng() % 25), uniform(rng, 0.1, 10.0));
    auto parts = split_pos_neg(v);
    const double nv = spectral_norm(v);
    CHECK(spectral_norm(Matrix(parts.positive.mat() - parts.negative.mat() - v.mat())) <= 1e-10 * (1 + nv));
    CHECK(spectral_norm(Matrix(parts.positive.mat() * parts.negative.mat())) <= 1e-10 * (1 + nv * nv));
    CHECK(min_eigenvalue(parts.positive) >= -1e-10 * (1 + nv));
    CHECK(min_eigenvalue(parts.negative) >= -1e-10 * (1 + nv));
    CHECK(spectral_norm(parts.positive) <= nv + 1e-10);
    CHECK(spectral_norm(parts.negative) <= nv + 1e-10);
  }
}

TEST_CASE("diagonal and off-diagonal parts") {
  Vector d(2);
  d << 1, -1;
  auto s = split(SymMatrix::diagonal(d), 0.0);
  Matrix v(2, 2);
  v << 1, 2, 2, 3;
  auto parts = split_diag_offdiag(SymMatrix(v), s);
  CHECK(parts.diagonal(0, 0) == doctest::Approx(1.0));
  CHECK(parts.diagonal(1, 1) == doctest::Approx(3.0));
  CHECK(std::abs(parts.diagonal(0, 1)) < 1e-15);
  CHECK(parts.off_diagonal(0, 1) == doctest::Approx(2.0));
  CHECK(std::abs(parts.off_diagonal(0, 0)) < 1e-15);

  Rng rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 25);
    SymMatrix a = with_spectrum(rng, gapped_values(rng, n, n / 2, -1, 1));
    auto sa = split(a, 0.0);
    SymMatrix commuting = apply_fn(a, [](double x) { return x * x; });
    CHECK(spectral_norm(split_diag_offdiag(commuting, sa).off_diagonal) <= 1e-10 * (1 + spectral_norm(commuting)));
    SymMatrix w = random_symmetric(rng, n, 2.0);
    auto dp = split_diag_offdiag(w, sa);
    CHECK(spectral_norm(Matrix(dp.diagonal.mat() + dp.off_diagonal.mat() - w.mat())) <= 1e-10 * 3);
    auto od = off_diagonality(dp.off_diagonal, sa);
    CHECK(od.upper <= 1e-12 * 3);
    CHECK(od.lower <= 1e-12 * 3);
  }
}

TEST_CASE("operator relative bound") {
  Rng rng(61);
  SymMatrix a = random_symmetric(rng, 10, 3.0);
  auto half = min_operator_bound_a(0.5 * a.mat(), a, 0.5);
  CHECK(half.a <= 1e-6);
  SymMatrix v = random_symmetric(rng, 10, 2.0);
  auto zero_b = min_operator_bound_a(v.mat(), a, 0.0);
  CHECK(zero_b.a == doctest::Approx(spectral_norm(v)).epsilon(1e-12));

  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 20);
    SymMatrix aa = random_symmetric(rng, n, uniform(rng, 0.5, 10.0));
    Matrix vv = gaussian_matrix(rng, n, n);
    const double b = uniform(rng, 0.0, 1.0);
    auto rb = min_operator_bound_a(vv, aa, b);
    for (int i = 0; i < 1000; ++i) {
      Vector x = unit_vector(rng, n);
      CHECK((vv * x).norm() <= rb.a + b * (aa.mat() * x).norm() + 1e-9);
    }
  }
}

TEST_CASE("form relative bound") {
  Rng rng(67);
  SymMatrix a = random_symmetric(rng, 8, 2.0);
  CHECK(min_form_bound_a(SymMatrix::zero(8), a, 0.5).a == doctest::Approx(0.0));
  auto unit = min_form_bound_a(SymMatrix::identity(3), SymMatrix::identity(3), 0.0);
  CHECK(unit.a == doctest::Approx(1.0));

  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 20);
    Vector ev(n);
    for (int i = 0; i < n; ++i) ev(i) = uniform(rng, 0.1, 20.0);
    SymMatrix pos = with_spectrum(rng, ev);
    SymMatrix v = random_symmetric(rng, n, uniform(rng, 0.1, 5.0));
    const double b = uniform(rng, 0.05, 0.9);
    auto rb = min_form_bound_a(v, pos, b);
    for (int i = 0; i < 1000; ++i) {
      Vector x = unit_vector(rng, n);
      CHECK(std::abs(x.dot(v.mat() * x)) <= rb.a + b * std::abs(x.dot(pos.mat() * x)) + 1e-9);
    }
  }
}

TEST_CASE("form bound certificate for indefinite semibounded operators") {
  Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 15);
    for (Branch branch : {Branch::lower, Branch::upper}) {
      SymMatrix a = random_symmetric(rng, n, uniform(rng, 1.0, 10.0));
      SymMatrix v = random_symmetric(rng, n, uniform(rng, 0.1, 3.0));
      const double b = 0.5;
      auto rb = min_form_bound_a(v, a, b, branch);
      const double sign = branch == Branch::lower ? 1.0 : -1.0;
      for (int i = 0; i < 500; ++i) {
        Vector x = unit_vector(rng, n);
        const double form = x.dot(a.mat() * x);
        CHECK(std::abs(x.dot(v.mat() * x)) <= rb.a_tilde + b * sign * form + 1e-9);
      }
    }
  }
}

TEST_CASE("sandwich bound is the smallest admissible a") {
  Rng rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 12);
    Vector ev(n);
    for (int i = 0; i < n; ++i) ev(i) = uniform(rng, 0.0, 5.0);
    SymMatrix r = with_spectrum(rng, ev);
    SymMatrix v = random_symmetric(rng, n, 1.0);
    const double b = uniform(rng, 0.0, 0.5);
    const double a = sandwich_bound(v, r, b);
    SymMatrix upper = SymMatrix::identity(n) * a + r * b;
    CHECK(psd_leq(v, upper, 1e-10).holds);
    CHECK(psd_leq(-v, upper, 1e-10).holds);
    if (a > 1e-6) {
      SymMatrix tighter = SymMatrix::identity(n) * (a - 1e-6) + r * b;
      CHECK_FALSE((psd_leq(v, tighter, 0.0).holds && psd_leq(-v, tighter, 0.0).holds));
    }
  }
}
