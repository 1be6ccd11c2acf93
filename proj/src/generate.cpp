#include "gapmm/generate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "gapmm/random.hpp"
#include "gapmm/stokes.hpp"

namespace gapmm {

const char* to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::bounded_pert: return "bounded-pert";
    case InstanceKind::offdiag_op: return "offdiag-op";
    case InstanceKind::offdiag_form: return "offdiag-form";
    case InstanceKind::unbounded_style: return "unbounded-style";
    case InstanceKind::semibounded: return "semibounded";
    case InstanceKind::stokes: return "stokes";
  }
  return "bounded-pert";
}

InstanceKind parse_kind(const std::string& s) {
  for (auto k : {InstanceKind::bounded_pert, InstanceKind::offdiag_op, InstanceKind::offdiag_form,
                 InstanceKind::unbounded_style, InstanceKind::semibounded, InstanceKind::stokes})
    if (s == to_string(k)) return k;
  throw DomainError("unknown instance kind '" + s + "'");
}

namespace {

struct Unperturbed {
  SymMatrix A;
  Matrix wp, wm;  // eigenvectors above / below the gap
};

// Eigenvalues below the gap in [c - lower_width, c], above in [d, d + upper_width];
// c and d themselves are eigenvalues.
Unperturbed draw_operator(Rng& rng, int n, double c, double d, double lower_width, double upper_width) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  int nm = std::clamp(static_cast<int>(std::lround(uniform(rng, 0.25, 0.75) * n)), 1, n - 1);
  Vector ev(n);
  for (int i = 0; i < nm; ++i) ev(i) = i == 0 ? c : uniform(rng, c - lower_width, c);
  for (int i = nm; i < n; ++i) ev(i) = i == nm ? d : uniform(rng, d, d + upper_width);
  std::sort(ev.data(), ev.data() + n);
  Matrix u = haar_frame(rng, n, n);
  return {SymMatrix(Matrix(u * ev.asDiagonal() * u.transpose())), u.rightCols(n - nm), u.leftCols(nm)};
}

SymMatrix off_diagonal(Rng& rng, const Unperturbed& op, double norm) {
  Matrix g = gaussian_matrix(rng, op.wp.cols(), op.wm.cols());
  Matrix v = op.wp * g * op.wm.transpose();
  SymMatrix s(Matrix(v + v.transpose()));
  return s * (norm / spectral_norm(s));
}

// Symmetric matrix with largest eigenvalue p and smallest -q.
SymMatrix with_extremes(Rng& rng, int n, double p, double q) {
  Vector ev(n);
  for (int i = 0; i < n; ++i) ev(i) = uniform(rng, -q, p);
  ev(0) = p;
  ev(n - 1) = -q;
  Matrix u = haar_frame(rng, n, n);
  return SymMatrix(Matrix(u * ev.asDiagonal() * u.transpose()));
}

void fill_bounded(Instance& in, Rng& rng) {
  const auto& s = in.spec;
  const double w = s.d - s.c;
  Unperturbed op = draw_operator(rng, s.dim, s.c, s.d, 2 * w, 2 * w);
  const double ratio = s.scale > 0 ? s.scale : uniform(rng, 0.3, 0.9);
  double frac = uniform(rng, 0.0, 1.0);
  const double pick = uniform(rng, 0.0, 1.0);
  if (pick < 0.15) frac = 1.0;
  else if (pick < 0.3) frac = 0.0;
  const double p = frac * ratio * w, q = (1 - frac) * ratio * w;
  in.A = op.A;
  in.V = with_extremes(rng, s.dim, p, q);
  in.gamma = 0.5 * (s.c + p + s.d - q);
  // V1 = V0 + G with G >= 0, ||G|| below the remaining slack.
  Matrix h = gaussian_matrix(rng, s.dim, std::max(1, s.dim / 4));
  SymMatrix g(Matrix(h * h.transpose()));
  g = g * (uniform(rng, 0.2, 0.9) * (1 - ratio) * w / spectral_norm(g));
  in.V1 = in.V + g;
  in.margins["norm_condition"] = w - (p + q);
  in.margins["ordered_increment"] = spectral_norm(g);
}

void fill_offdiag(Instance& in, Rng& rng, bool form) {
  const auto& s = in.spec;
  const double w = s.d - s.c;
  const bool lower = s.branch == Branch::lower;
  // Form instances are semibounded on the declared side: that side stays
  // narrow, the other one is wide.
  const double narrow = 2 * w, wide = form ? 20 * w : 2 * w;
  Unperturbed op = draw_operator(rng, s.dim, s.c, s.d, lower ? narrow : wide, lower ? wide : narrow);
  in.A = op.A;
  in.V = off_diagonal(rng, op, (s.scale > 0 ? s.scale : uniform(rng, 0.1, 3.0)) * w);
  in.gamma = 0.5 * (s.c + s.d);
  in.margins["offdiag_residual"] = 0.0;
}

void fill_semibounded(Instance& in, Rng& rng) {
  const auto& s = in.spec;
  const double w = s.d - s.c;
  const bool lower = s.branch == Branch::lower;
  Unperturbed op = draw_operator(rng, s.dim, s.c, s.d, lower ? 2 * w : 20 * w, lower ? 20 * w : 2 * w);
  // A block shift away from the gap on the unbounded side keeps the split;
  // a small symmetric part E with ||E|| < w/2 keeps negativity and ||P+ - Q+|| < 1.
  Matrix side = lower ? op.wp : op.wm;
  Vector shift(side.cols());
  for (Eigen::Index i = 0; i < shift.size(); ++i) shift(i) = (lower ? 1.0 : -1.0) * uniform(rng, 0.0, 10 * w);
  SymMatrix blockshift(Matrix(side * shift.asDiagonal() * side.transpose()));
  const double e = (s.scale > 0 ? std::min(s.scale, 0.95) : uniform(rng, 0.2, 0.95)) * 0.5 * w;
  in.A = op.A;
  in.V = blockshift + random_symmetric(rng, s.dim, e);
  in.gamma = 0.5 * (s.c + s.d);
  in.margins["small_part_slack"] = 0.5 * w - e;
}

void fill_unbounded(Instance& in, Rng& rng) {
  const auto& s = in.spec;
  const bool lower = s.branch == Branch::lower;
  // The upper branch is the mirror image of a lower instance on (-d, -c).
  const double c = lower ? s.c : -s.d, d = lower ? s.d : -s.c;
  const double w = d - c;
  Unperturbed op = draw_operator(rng, s.dim, c, d, w, 20 * w);
  const double m = c - w;  // lower end of the spectrum of A is within [m, c]
  const double b0 = s.scale > 0 ? s.scale : uniform(rng, 0.02, 0.25);
  const double room = 0.5 * (w - b0 * (c + d)) + b0 * m;
  if (room <= 0) throw DomainError("perturbation scale too large for the gap");
  const double a0 = uniform(rng, 0.1, 0.8) * room;
  SymMatrix root = apply_fn(op.A.shifted(-m), [](double x) { return std::sqrt(std::max(x, 0.0)); });
  SymMatrix r = random_symmetric(rng, s.dim, 1.0);
  SymMatrix e = random_symmetric(rng, s.dim, 1.0);
  SymMatrix v = SymMatrix(Matrix(b0 * root.mat() * r.mat() * root.mat())) + a0 * e;
  in.A = lower ? op.A : -op.A;
  in.V = lower ? v : -v;
  in.gamma = 0.5 * (s.c + s.d);
  in.margins["designed_a"] = a0 - b0 * m;
  in.margins["designed_b"] = b0;
  in.margins["designed_condition"] = w - 2 * (a0 - b0 * m) - b0 * (c + d);
}

void fill_stokes(Instance& in, Rng& rng) {
  const double nu = 1.0, vstar = in.spec.scale > 0 ? in.spec.scale : uniform(rng, 0.1, 1.0);
  StokesInstance st = assemble_stokes(make_grid(1, in.spec.dim), nu, vstar);
  in.A = st.A;
  in.V = st.V;
  in.gamma = 0.0;
  in.margins["nu"] = nu;
  in.margins["vstar"] = vstar;
  in.margins["c_h"] = st.c_h;
  in.margins["points"] = in.spec.dim;
}

}  // namespace

Instance generate(const InstanceSpec& spec, std::uint64_t seed, const std::string& id) {
  if (!(spec.c < spec.d)) throw DomainError("gap must satisfy c < d");
  Instance in;
  in.id = id.empty() ? std::string(to_string(spec.kind)) + "-" + std::to_string(seed) : id;
  in.spec = spec;
  in.seed = seed;
  Rng rng(seed);
  switch (spec.kind) {
    case InstanceKind::bounded_pert: fill_bounded(in, rng); break;
    case InstanceKind::offdiag_op: fill_offdiag(in, rng, false); break;
    case InstanceKind::offdiag_form: fill_offdiag(in, rng, true); break;
    case InstanceKind::semibounded: fill_semibounded(in, rng); break;
    case InstanceKind::unbounded_style: fill_unbounded(in, rng); break;
    case InstanceKind::stokes: fill_stokes(in, rng); break;
  }
  return in;
}

void write_instance(const Instance& in, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_matrix_file((dir / "A.txt").string(), in.A);
  write_matrix_file((dir / "V.txt").string(), in.V);
  if (in.V1) write_matrix_file((dir / "V1.txt").string(), *in.V1);
  nlohmann::ordered_json m;
  m["id"] = in.id;
  m["kind"] = to_string(in.spec.kind);
  m["dim"] = in.spec.dim;
  m["gap"] = {in.spec.c, in.spec.d};
  m["gamma"] = in.gamma;
  m["scale"] = in.spec.scale;
  m["branch"] = in.spec.branch == Branch::lower ? "lower" : "upper";
  m["seed"] = in.seed;
  m["margins"] = in.margins;
  std::ofstream out(dir / "manifest.json");
  if (!out) throw IoError("cannot write manifest in " + dir.string());
  out << m.dump(2) << '\n';
}

Instance read_instance(const std::filesystem::path& dir) {
  std::ifstream mf(dir / "manifest.json");
  if (!mf) throw IoError("cannot open " + (dir / "manifest.json").string());
  nlohmann::ordered_json m;
  try {
    m = nlohmann::ordered_json::parse(mf);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("manifest: ") + e.what(), 0, static_cast<int>(e.byte));
  }
  Instance in;
  try {
    in.id = m.value("id", dir.filename().string());
    in.spec.kind = parse_kind(m.at("kind").get<std::string>());
    in.spec.dim = m.value("dim", 0);
    in.spec.c = m.at("gap").at(0).get<double>();
    in.spec.d = m.at("gap").at(1).get<double>();
    in.spec.scale = m.value("scale", -1.0);
    in.spec.branch = m.value("branch", std::string("lower")) == "upper" ? Branch::upper : Branch::lower;
    in.seed = m.value("seed", std::uint64_t{0});
    in.gamma = m.value("gamma", 0.5 * (in.spec.c + in.spec.d));
    if (m.contains("margins")) in.margins = m["margins"];
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what(), 0, 0);
  }
  in.A = read_matrix_file((dir / "A.txt").string());
  in.V = read_matrix_file((dir / "V.txt").string());
  if (std::filesystem::exists(dir / "V1.txt")) in.V1 = read_matrix_file((dir / "V1.txt").string());
  if (in.V.dim() != in.A.dim()) throw DimensionMismatch("A and V differ in dimension");
  in.spec.dim = in.A.dim();
  return in;
}

}  // namespace gapmm
