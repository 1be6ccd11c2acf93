#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "gapmm/spectral.hpp"
#include "helpers.hpp"

using namespace gapmm;
using namespace testing;

namespace {

SymMatrix rotated_pair_b(double theta) {
  // eigenvalue 1 on (cos, sin), -1 on the orthogonal direction
  Matrix q(2, 2);
  q << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  Vector ev(2);
  ev << 1, -1;
  return SymMatrix(Matrix(q * ev.asDiagonal() * q.transpose()));
}

}  // namespace

TEST_CASE("split of diagonal matrices") {
  Vector d(2);
  d << 1, -1;
  auto s = split(SymMatrix::diagonal(d), 0.0);
  CHECK(s.Pp(0, 0) == doctest::Approx(1.0));
  CHECK(std::abs(s.Pp(1, 1)) < 1e-15);
  CHECK(s.Pm(1, 1) == doctest::Approx(1.0));

  Vector d3(3);
  d3 << 5, 3, -2;
  auto s3 = split(SymMatrix::diagonal(d3), 0.0);
  CHECK(s3.rank_p() == 2);
  CHECK(s3.rank_m() == 1);
  CHECK(s3.values_p(0) == 3.0);
}

TEST_CASE("split rejects gamma on the spectrum unless assigned below") {
  Vector d(3);
  d << 1, 0, -1;
  CHECK_THROWS_AS(split(SymMatrix::diagonal(d), 0.0), GapTooClose);
  auto s = split(SymMatrix::diagonal(d), 0.0, {}, Boundary::assign_lower);
  CHECK(s.rank_p() == 1);
  CHECK(s.rank_m() == 2);
}

TEST_CASE("projector invariants on random gapped matrices") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 30);
    const int low = static_cast<int>(rng() % (n + 1));
    SymMatrix a = with_spectrum(rng, gapped_values(rng, n, low, -0.5, 0.5));
    auto s = split(a, 0.0);
    const double tol = 1e-10 * (1.0 + spectral_norm(a));
    CHECK(s.rank_p() == n - low);
    CHECK((s.Pp * s.Pp - s.Pp).norm() <= 1e-10);
    CHECK((s.Pp - s.Pp.transpose()).norm() == 0.0);
    CHECK((s.Pp + s.Pm - Matrix::Identity(n, n)).norm() <= 1e-10);
    CHECK((s.Pp * a.mat() - a.mat() * s.Pp).norm() <= tol);
    for (int i = 0; i < s.values_p.size(); ++i) CHECK(s.values_p(i) > 0.0);
    for (int i = 0; i < s.values_m.size(); ++i) CHECK(s.values_m(i) < 0.0);
  }
}

TEST_CASE("gap search") {
  Vector d(2);
  d << 1, -1;
  auto g = find_gap(SymMatrix::diagonal(d), 0.0);
  CHECK(g.c == doctest::Approx(-1.0));
  CHECK(g.d == doctest::Approx(1.0));

  d << 2, 3;
  auto up = find_gap(SymMatrix::diagonal(d), 0.0);
  CHECK(up.c == -std::numeric_limits<double>::infinity());
  CHECK(up.d == doctest::Approx(2.0));

  CHECK_THROWS_AS(find_gap(SymMatrix::diagonal(d), 2.0), InsideSpectrum);

  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    SymMatrix a = random_symmetric(rng, 15, 4.0);
    std::vector<double> ev(15);
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.mat());
    for (int i = 0; i < 15; ++i) ev[i] = es.eigenvalues()(i);
    const int j = 1 + static_cast<int>(rng() % 13);
    const double mid = 0.5 * (ev[j] + ev[j + 1]);
    auto w = find_gap(a, mid);
    CHECK(w.c == doctest::Approx(ev[j]).epsilon(1e-10));
    CHECK(w.d == doctest::Approx(ev[j + 1]).epsilon(1e-10));
  }
}

TEST_CASE("compression") {
  Vector d(3);
  d << 1, 2, 3;
  SymMatrix b = SymMatrix::diagonal(d);
  CHECK(compress(b, Matrix::Identity(3, 3)).mat() == b.mat());
  Matrix w = Matrix::Identity(3, 2);
  SymMatrix c = compress(b, w);
  CHECK(c(0, 0) == 1.0);
  CHECK(c(1, 1) == 2.0);
  CHECK_THROWS_AS(compress(b, Matrix::Ones(3, 1)), NotOrthonormal);

  Rng rng(41);
  SymMatrix r = random_symmetric(rng, 20, 3.0);
  auto s = split(r, 0.1);
  Vector part = eigenvalues(compress(r, s.basis_p));
  CHECK((part - s.values_p).cwiseAbs().maxCoeff() <= 1e-12 * 4);
}

TEST_CASE("eigenvalues above the split") {
  Vector d(3);
  d << 5, 2, -1;
  SymMatrix b = SymMatrix::diagonal(d);
  auto s = split(b, 0.0);
  CHECK(part_eigenvalue(b, s, 1) == doctest::Approx(2.0));
  CHECK(part_eigenvalue(b, s, 2) == doctest::Approx(5.0));
  CHECK_THROWS_AS(part_eigenvalue(b, s, 3), IndexOutOfRange);

  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    SymMatrix r = random_symmetric(rng, 25, 3.0);
    const double gamma = uniform(rng, -1.0, 1.0);
    std::vector<double> ev(25);
    Eigen::SelfAdjointEigenSolver<Matrix> es(r.mat());
    for (int i = 0; i < 25; ++i) ev[i] = es.eigenvalues()(i);
    const int below = static_cast<int>(std::count_if(ev.begin(), ev.end(), [&](double x) { return x <= gamma; }));
    auto sp = split(r, gamma, {}, Boundary::assign_lower);
    for (int k = 1; k <= sp.rank_p(); ++k)
      CHECK(part_eigenvalue(r, sp, k) == doctest::Approx(ev[below + k - 1]).epsilon(1e-11));
  }
}

TEST_CASE("graph operator of a 2x2 rotation") {
  Vector d(2);
  d << 1, -1;
  const double theta = 0.3;
  auto as = split(SymMatrix::diagonal(d), 0.0);
  auto bs = split(rotated_pair_b(theta), 0.0);
  auto g = graph_operator(as, bs);
  REQUIRE(g.X.rows() == 1);
  REQUIRE(g.X.cols() == 1);
  CHECK(std::abs(g.X(0, 0)) == doctest::Approx(std::tan(theta)).epsilon(1e-13));
  CHECK(g.dist == doctest::Approx(std::sin(theta)).epsilon(1e-13));
  CHECK((g.Y + g.Y.transpose()).norm() <= 1e-15);
  auto rep = verify_graph_identities(g, as, bs);
  CHECK(rep.max_residual() <= 1e-12);
  CHECK(rep.passed());

  auto same = graph_operator(as, as);
  CHECK(same.normX == 0.0);
  CHECK(same.dist == 0.0);
  auto rep0 = verify_graph_identities(same, as, as);
  CHECK(rep0.max_residual() == doctest::Approx(0.0));
}

TEST_CASE("graph operator needs distance below one") {
  Vector d(2);
  d << 1, -1;
  auto as = split(SymMatrix::diagonal(d), 0.0);
  auto bs = split(rotated_pair_b(M_PI / 2), 0.0);
  CHECK_THROWS_AS(graph_operator(as, bs), GraphUndefined);
}

TEST_CASE("graph identities on random pairs") {
  Rng rng(47);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 30);
    const int low = 1 + static_cast<int>(rng() % (n - 2));
    SymMatrix a = with_spectrum(rng, gapped_values(rng, n, low, -1.0, 1.0));
    SymMatrix b = a + random_symmetric(rng, n, uniform(rng, 0.05, 0.9));
    auto as = split(a, 0.0);
    auto bs = split(b, 0.0, {}, Boundary::assign_lower);
    if (bs.rank_p() != as.rank_p()) continue;
    GraphData g;
    try {
      g = graph_operator(as, bs);
    } catch (const GraphUndefined&) {
      continue;
    }
    auto rep = verify_graph_identities(g, as, bs);
    CHECK(rep.max_residual() <= 1e-9);
    CHECK(std::abs(g.dist - g.normX / std::sqrt(1 + g.normX * g.normX)) <= 1e-10);
    CHECK(rep.pq_minus <= g.dist + 1e-12);
  }
}
