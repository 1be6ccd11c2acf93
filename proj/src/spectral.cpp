#include "gapmm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gapmm {

double gap_tolerance(const SymMatrix& a, const Tolerances& tol) {
  return tol.gap * (1.0 + spectral_norm(a));
}

SpectralSplit split(const SymMatrix& a, double gamma, const Tolerances& tol, Boundary boundary) {
  return split(a, eig_sym(a), gamma, tol, boundary);
}

SpectralSplit split(const SymMatrix& a, const EigenDecomposition& e, double gamma, const Tolerances& tol,
                    Boundary boundary) {
  const int n = a.dim();
  double norm = 0.0;
  for (int i = 0; i < n; ++i) norm = std::max(norm, std::abs(e.values(i)));
  const double gtol = tol.gap * (1.0 + norm);
  int lower = 0;
  for (int i = 0; i < n; ++i) {
    double lam = e.values(i);
    if (boundary == Boundary::reject && std::abs(lam - gamma) <= gtol)
      throw GapTooClose("eigenvalue " + std::to_string(lam) + " too close to split point " + std::to_string(gamma));
    if (boundary == Boundary::reject ? lam < gamma : lam <= gamma + gtol) lower = i + 1;
  }
  SpectralSplit s;
  s.gamma = gamma;
  s.basis_m = e.vectors.leftCols(lower);
  s.values_m = e.values.head(lower);
  s.basis_p = e.vectors.rightCols(n - lower);
  s.values_p = e.values.tail(n - lower);
  s.Pp = SymMatrix(Matrix(s.basis_p * s.basis_p.transpose())).mat();
  s.Pm = SymMatrix(Matrix(s.basis_m * s.basis_m.transpose())).mat();
  return s;
}

GapWindow find_gap(const SymMatrix& a, double around, const Tolerances& tol) {
  Vector ev = eigenvalues(a);
  double norm = ev.size() ? std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))) : 0.0;
  const double gtol = tol.gap * (1.0 + norm);
  GapWindow w{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i) - around) <= gtol)
      throw InsideSpectrum("point " + std::to_string(around) + " lies on the spectrum");
    if (ev(i) < around) w.c = ev(i);
    else if (ev(i) < w.d) w.d = ev(i);
  }
  return w;
}

SymMatrix compress(const SymMatrix& b, const Matrix& frame, const Tolerances& tol) {
  if (frame.rows() != b.dim()) throw DimensionMismatch("frame rows differ from matrix dimension");
  if (frame.cols() > 0) {
    Matrix gram = frame.transpose() * frame;
    gram.diagonal().array() -= 1.0;
    if (gram.cwiseAbs().maxCoeff() > tol.ortho) throw NotOrthonormal("frame columns are not orthonormal");
  }
  return SymMatrix(Matrix(frame.transpose() * b.mat() * frame));
}

Vector part_spectrum(const SymMatrix& b, const SpectralSplit& s, const Tolerances& tol) {
  if (s.dim() != b.dim()) throw DimensionMismatch("split and matrix dimensions differ");
  return eigenvalues(compress(b, s.basis_p, tol));
}

double part_eigenvalue(const SymMatrix& b, const SpectralSplit& s, int k, const Tolerances& tol) {
  if (k < 1 || k > s.rank_p())
    throw IndexOutOfRange("index " + std::to_string(k) + " outside 1.." + std::to_string(s.rank_p()));
  return part_spectrum(b, s, tol)(k - 1);
}

GraphData graph_operator(const SpectralSplit& as, const SpectralSplit& bs, const Tolerances& tol) {
  if (as.dim() != bs.dim()) throw DimensionMismatch("splits act on different spaces");
  GraphData g;
  g.dist = spectral_norm(Matrix(as.Pp - bs.Pp));
  if (as.rank_p() != bs.rank_p() || g.dist >= 1.0 - tol.graph)
    throw GraphUndefined("||P+ - Q+|| = " + std::to_string(g.dist) + " is not below 1");
  const Matrix& wp = as.basis_p;
  const Matrix& wm = as.basis_m;
  Matrix fp = wp.transpose() * bs.basis_p;  // square, invertible when dist < 1
  Matrix fm = wm.transpose() * bs.basis_p;
  if (fp.size() > 0) {
    Matrix t = fp * fp.transpose();  // P+ Q+ restricted to Ran P+
    if (min_eigenvalue(SymMatrix(t)) < tol.sv)
      throw NotBijective("P+ Q+ is not bijective on Ran P+");
    g.X = fp.transpose().partialPivLu().solve(fm.transpose()).transpose();
  } else {
    g.X = Matrix::Zero(as.rank_m(), 0);
  }
  g.normX = spectral_norm(g.X);
  g.Y = wm * g.X * wp.transpose() - wp * g.X.transpose() * wm.transpose();
  return g;
}

double GraphIdentityReport::max_residual() const {
  return std::max({repr_first, repr_second, i_minus_y, compressed, distance, skew});
}

bool GraphIdentityReport::passed() const { return max_residual() <= tolerance && pq_minus <= dist + tolerance; }

GraphIdentityReport verify_graph_identities(const GraphData& g, const SpectralSplit& as, const SpectralSplit& bs,
                                            const Tolerances& tol) {
  const int kp = as.rank_p(), km = as.rank_m(), n = as.dim();
  const Matrix& x = g.X;
  Matrix u(n, n);
  u << as.basis_p, as.basis_m;
  Matrix ip = Matrix::Identity(kp, kp), im = Matrix::Identity(km, km);
  Matrix xsx = ip + x.transpose() * x;
  Matrix xxs = im + x * x.transpose();
  Matrix inv_p = xsx.ldlt().solve(ip);
  Matrix inv_m = xxs.ldlt().solve(im);

  GraphIdentityReport r;
  r.dist = g.dist;
  r.tolerance = tol.identity * (1.0 + g.normX * g.normX);

  Matrix first(n, n);
  first << inv_p, inv_p * x.transpose(), x * inv_p, x * inv_p * x.transpose();
  r.repr_first = spectral_norm(Matrix(bs.Pp - u * first * u.transpose()));

  Matrix second(n, n);
  second << inv_p, x.transpose() * inv_m, inv_m * x, x * x.transpose() * inv_m;
  r.repr_second = spectral_norm(Matrix(bs.Pp - u * second * u.transpose()));

  Matrix id = Matrix::Identity(n, n);
  Matrix blocks = as.basis_p * xsx * as.basis_p.transpose() + as.basis_m * xxs * as.basis_m.transpose();
  r.i_minus_y = spectral_norm(Matrix((id - g.Y) * (id + g.Y) - blocks));

  Matrix pq = as.basis_p.transpose() * bs.Pp * as.basis_p;
  r.compressed = spectral_norm(Matrix(pq - inv_p));

  r.distance = std::abs(g.dist - g.normX / std::sqrt(1.0 + g.normX * g.normX));
  r.skew = spectral_norm(Matrix(g.Y + g.Y.transpose()));
  r.pq_minus = spectral_norm(Matrix(as.Pp * bs.Pm));
  return r;
}

}  // namespace gapmm
