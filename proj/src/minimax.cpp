#include "gapmm/minimax.hpp"

#include <cmath>
#include <limits>

#include "gapmm/random.hpp"

namespace gapmm {

const char* to_string(MinimaxStatus s) {
  switch (s) {
    case MinimaxStatus::pass: return "pass";
    case MinimaxStatus::refined_pass: return "refined-pass";
    case MinimaxStatus::fail: return "fail";
  }
  return "fail";
}

double inner_sup(const SymMatrix& b, const Matrix& mp, const Matrix& basis_m, const Tolerances& tol) {
  if (mp.rows() != b.dim() || basis_m.rows() != b.dim()) throw DimensionMismatch("frame rows differ");
  Matrix w(b.dim(), mp.cols() + basis_m.cols());
  w << mp, basis_m;
  return max_eigenvalue(compress(b, w, tol));
}

MinimaxEngine::MinimaxEngine(const SymMatrix& b, SpectralSplit a_split, SpectralSplit b_split, MinimaxConfig cfg)
    : b_(b), as_(std::move(a_split)), bs_(std::move(b_split)), cfg_(cfg) {
  if (as_.dim() != b.dim() || bs_.dim() != b.dim()) throw DimensionMismatch("splits and matrix differ");
  const Matrix& wp = as_.basis_p;
  const Matrix& wm = as_.basis_m;
  bpp_ = wp.transpose() * b.mat() * wp;
  bpm_ = wp.transpose() * b.mat() * wm;
  bmm_ = wm.transpose() * b.mat() * wm;
  if (cfg_.form_path) {
    SymMatrix f = QuadraticForm(b).matrix();
    fpp_ = wp.transpose() * f.mat() * wp;
    fpm_ = wp.transpose() * f.mat() * wm;
    fmm_ = wm.transpose() * f.mat() * wm;
  }
  direct_ = part_spectrum(b, bs_, cfg_.tol);
  b_norm_ = spectral_norm(b);
}

int MinimaxEngine::max_k() const { return std::min(as_.rank_p(), bs_.rank_p()); }

double MinimaxEngine::direct(int k) const {
  if (k < 1 || k > bs_.rank_p()) throw IndexOutOfRange("index " + std::to_string(k) + " outside Ran Q+");
  return direct_(k - 1);
}

double MinimaxEngine::top_eigenvalue(const Matrix& g, const Matrix& pp, const Matrix& pm, const Matrix& mm) const {
  const Eigen::Index k = g.cols(), km = mm.rows();
  Matrix c(k + km, k + km);
  c.topLeftCorner(k, k) = g.transpose() * pp * g;
  c.topRightCorner(k, km) = g.transpose() * pm;
  c.bottomLeftCorner(km, k) = c.topRightCorner(k, km).transpose();
  c.bottomRightCorner(km, km) = mm;
  return max_eigenvalue(SymMatrix(c));
}

double MinimaxEngine::sup(const Matrix& g) const { return top_eigenvalue(g, bpp_, bpm_, bmm_); }

double MinimaxEngine::form_sup(const Matrix& g) const {
  if (!cfg_.form_path) return sup(g);
  return top_eigenvalue(g, fpp_, fpm_, fmm_);
}

Matrix MinimaxEngine::to_coords(const Matrix& frame) const {
  if (frame.rows() != as_.dim()) throw DimensionMismatch("frame rows differ");
  return as_.basis_p.transpose() * frame;
}

Matrix MinimaxEngine::candidate(int k) const {
  if (k < 1 || k > max_k()) throw IndexOutOfRange("index " + std::to_string(k) + " outside 1.." + std::to_string(max_k()));
  // Columns of the Q+ basis are eigenvectors of B in increasing order.
  Matrix h = as_.basis_p.transpose() * bs_.basis_p.leftCols(k);
  double smin = std::sqrt(std::max(0.0, min_eigenvalue(SymMatrix(Matrix(h.transpose() * h)))));
  if (smin < cfg_.tol.rank) throw RankDeficient("projected eigenvectors are linearly dependent");
  return orthonormalize(h);
}

ProbeResult MinimaxEngine::probe(int k, int trials, std::uint64_t seed) const {
  if (k < 1 || k > as_.rank_p()) throw IndexOutOfRange("index " + std::to_string(k) + " outside Ran P+");
  ProbeResult r{std::numeric_limits<double>::infinity(), Matrix()};
  for (int i = 0; i < trials; ++i) {
    Rng rng(seed ^ static_cast<std::uint64_t>(i));
    Matrix g = haar_frame(rng, as_.rank_p(), k);
    double v = sup(g);
    if (v < r.min_value) {
      r.min_value = v;
      r.argmin = g;
    }
  }
  return r;
}

double MinimaxEngine::refine(const Matrix& start, int iters, Matrix* best) const {
  const Eigen::Index kp = start.rows(), k = start.cols();
  Matrix q = Eigen::HouseholderQR<Matrix>(start).householderQ();
  Matrix g = q.leftCols(k);
  Matrix c = q.rightCols(kp - k);
  double value = sup(start);
  double step = 0.5;
  for (int round = 0; round < iters && step > 1e-12; ++round) {
    bool improved = false;
    for (Eigen::Index j = 0; j < k; ++j)
      for (Eigen::Index l = 0; l < kp - k; ++l)
        for (double theta : {step, -step}) {
          const double cs = std::cos(theta), sn = std::sin(theta);
          Vector gj = g.col(j), cl = c.col(l);
          g.col(j) = cs * gj + sn * cl;
          double v = sup(g);
          if (v < value) {
            value = v;
            c.col(l) = -sn * gj + cs * cl;
            improved = true;
            break;
          }
          g.col(j) = gj;
        }
    if (!improved) step *= 0.5;
  }
  if (best) *best = g;
  return value;
}

MinimaxReport MinimaxEngine::verify(int k) const {
  MinimaxReport r;
  r.k = k;
  r.direct = direct(k);
  if (k > as_.rank_p()) throw IndexOutOfRange("index " + std::to_string(k) + " outside Ran P+");
  r.tolerance = cfg_.tol.minimax * (1.0 + std::abs(r.direct));
  const double form_tol = cfg_.tol.form * (1.0 + b_norm_);

  Matrix start;
  bool have_candidate = false;
  try {
    start = candidate(k);
    have_candidate = true;
    r.candidate = sup(start);
    r.form_value = form_sup(start);
  } catch (const RankDeficient&) {
    r.candidate = r.form_value = std::numeric_limits<double>::infinity();
  }
  ProbeResult pr = probe(k, cfg_.probe_trials, derive_seed(cfg_.seed, static_cast<std::uint64_t>(k)));
  r.probes = cfg_.probe_trials;
  r.probe_min = pr.min_value;
  if (!have_candidate) start = pr.argmin;

  const bool probes_ok = r.probe_min >= r.direct - r.tolerance;
  const bool candidate_ok = have_candidate && std::abs(r.candidate - r.direct) <= r.tolerance &&
                            std::abs(r.form_value - r.candidate) <= form_tol;
  if (candidate_ok && probes_ok) {
    r.status = MinimaxStatus::pass;
    return r;
  }
  r.status = MinimaxStatus::fail;
  if (!probes_ok || start.size() == 0) return r;
  if (have_candidate && pr.min_value < r.candidate) start = pr.argmin;
  Matrix best;
  double refined = refine(start, cfg_.refine_iters, &best);
  r.refined = refined;
  if (std::abs(refined - r.direct) <= r.tolerance && std::abs(form_sup(best) - refined) <= form_tol)
    r.status = MinimaxStatus::refined_pass;
  return r;
}

Matrix candidate_subspace(const SymMatrix& b, const SpectralSplit& as, const SpectralSplit& bs, int k,
                          const Tolerances& tol) {
  MinimaxConfig cfg;
  cfg.tol = tol;
  cfg.form_path = false;
  MinimaxEngine e(b, as, bs, cfg);
  return e.from_coords(e.candidate(k));
}

ProbeResult probe(const SymMatrix& b, const SpectralSplit& as, int k, int trials, std::uint64_t seed) {
  SpectralSplit bs = split(b, as.gamma, {}, Boundary::assign_lower);
  MinimaxConfig cfg;
  cfg.form_path = false;
  MinimaxEngine e(b, as, bs, cfg);
  ProbeResult r = e.probe(k, trials, seed);
  r.argmin = e.from_coords(r.argmin);
  return r;
}

double refine(const SymMatrix& b, const SpectralSplit& as, const Matrix& start, int iters) {
  SpectralSplit bs = split(b, as.gamma, {}, Boundary::assign_lower);
  MinimaxConfig cfg;
  cfg.form_path = false;
  MinimaxEngine e(b, as, bs, cfg);
  Matrix g = e.to_coords(start);
  if ((e.from_coords(g) - start).norm() > 1e-8 * (1.0 + start.norm()))
    throw DomainError("refine start frame does not lie in Ran P+");
  return e.refine(orthonormalize(g), iters);
}

MinimaxReport verify_minimax(const SymMatrix& a, const SymMatrix& b, double gamma, int k, const MinimaxConfig& cfg) {
  MinimaxEngine e(b, split(a, gamma, cfg.tol, cfg.boundary), split(b, gamma, cfg.tol, cfg.boundary), cfg);
  return e.verify(k);
}

}  // namespace gapmm
