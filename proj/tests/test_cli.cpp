#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gapmm/driver.hpp"
#include "gapmm/random.hpp"
#include "helpers.hpp"

using namespace gapmm;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("gapmm_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(GAPMM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig small_run() {
  RunConfig cfg;
  cfg.dim_min = 10;
  cfg.dim_max = 20;
  cfg.trials = 50;
  cfg.k_max = 3;
  return cfg;
}

}  // namespace

TEST_CASE("generated instances are reproducible and satisfy their hypotheses") {
  const fs::path a = scratch() / "gen_a", b = scratch() / "gen_b";
  REQUIRE(run("gen --kind bounded-pert --dim 20 --seed 1 --out " + a.string()) == 0);
  REQUIRE(run("gen --kind bounded-pert --dim 20 --seed 1 --out " + b.string()) == 0);
  for (const char* f : {"A.txt", "V.txt", "V1.txt", "manifest.json"}) CHECK(slurp(a / f) == slurp(b / f));
  Instance in = read_instance(a);
  CHECK(in.margins.at("norm_condition").get<double>() > 0.0);

  const fs::path od = scratch() / "gen_od";
  REQUIRE(run("gen --kind offdiag-op --dim 24 --seed 5 --out " + od.string()) == 0);
  Instance o = read_instance(od);
  auto s = split(o.A, o.gamma);
  auto d = off_diagonality(o.V, s);
  CHECK(d.upper <= 1e-14 * (1 + spectral_norm(o.V)));
  CHECK(d.lower <= 1e-14 * (1 + spectral_norm(o.V)));
}

TEST_CASE("every instance kind round-trips through files") {
  for (auto kind : {InstanceKind::bounded_pert, InstanceKind::offdiag_op, InstanceKind::offdiag_form,
                    InstanceKind::unbounded_style, InstanceKind::semibounded, InstanceKind::stokes}) {
    InstanceSpec spec;
    spec.kind = kind;
    spec.dim = kind == InstanceKind::stokes ? 6 : 15;
    Instance in = generate(spec, 77, "rt");
    const fs::path dir = scratch() / (std::string("rt_") + to_string(kind));
    write_instance(in, dir);
    Instance back = read_instance(dir);
    CHECK(back.A.mat() == in.A.mat());
    CHECK(back.V.mat() == in.V.mat());
    CHECK(back.gamma == in.gamma);
    CHECK(back.spec.kind == kind);
  }
}

TEST_CASE("verify exit codes") {
  CHECK(run("verify --thm offdiag-op --batch 3 --dims 10:20 --trials 50 --json " + (scratch() / "r.json").string()) ==
        0);
  CHECK(run("verify --thm heinz --batch 5 --json -") == 0);
  CHECK(run("verify --thm offdiag-op --batch 1 --dims 60:60 --trials 20 --tol 1e-15 --json -") == 1);
  CHECK(run("verify --thm not-a-theorem --batch 1") == 2);
  CHECK(run("verify --batch 1") == 2);
  CHECK(run("") == 2);
  CHECK(run("verify --thm offdiag-op --in " + (scratch() / "missing").string()) == 1);

  const fs::path bad = scratch() / "bad_instance";
  REQUIRE(run("gen --kind offdiag-op --dim 12 --seed 2 --out " + bad.string()) == 0);
  {
    std::ofstream out(bad / "A.txt");
    out << "12\n1 2 3\n";
  }
  CHECK(run("verify --thm offdiag-op --in " + bad.string()) == 2);
}

TEST_CASE("violated hypotheses are reported as not applicable") {
  const fs::path dir = scratch() / "corrupt";
  REQUIRE(run("gen --kind offdiag-op --dim 16 --seed 3 --out " + dir.string()) == 0);
  Instance in = read_instance(dir);
  in.V = in.V + SymMatrix::identity(16) * 0.3;
  write_instance(in, dir);
  const fs::path out = scratch() / "corrupt.json";
  CHECK(run("verify --thm offdiag-op --in " + dir.string() + " --json " + out.string()) == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["summary"]["na"] == 1);
  CHECK(j["instances"][0]["hypotheses"][0]["holds"] == false);
}

TEST_CASE("tolerance scale from the environment is applied") {
  const fs::path out = scratch() / "scaled.json";
  ::setenv("GAPMM_TOL_SCALE", "2.5", 1);
  CHECK(run("verify --thm form-sum --batch 2 --json " + out.string()) == 0);
  ::unsetenv("GAPMM_TOL_SCALE");
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["run"]["config"]["tol_scale"] == 2.5);
  CHECK(j["run"]["config"]["minimax_tol"].get<double>() == doctest::Approx(2.5e-7));
}

TEST_CASE("reports are byte-identical for identical seeds") {
  RunConfig cfg = small_run();
  cfg.seed = 12345;
  for (const char* t : {"infinitesimal", "offdiag-form", "heinz"}) {
    const std::string first = verify_batch(t, 3, cfg).dump(2);
    const std::string second = verify_batch(t, 3, cfg).dump(2);
    CHECK(first == second);
  }
  const fs::path a = scratch() / "det_a.json", b = scratch() / "det_b.json";
  REQUIRE(run("verify --thm semibounded --batch 3 --dims 10:15 --trials 40 --seed 9 --json " + a.string()) == 0);
  REQUIRE(run("verify --thm semibounded --batch 3 --dims 10:15 --trials 40 --seed 9 --json " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  RunConfig other = cfg;
  other.seed = 54321;
  CHECK(verify_batch("infinitesimal", 2, cfg).dump() != verify_batch("infinitesimal", 2, other).dump());
}

TEST_CASE("report schema") {
  auto j = verify_batch("offdiag-op", 2, small_run());
  for (const char* key : {"seed", "version", "config"}) CHECK(j["run"].contains(key));
  REQUIRE(j["instances"].size() == 2);
  const auto& inst = j["instances"][0];
  for (const char* key : {"id", "kind", "theorem", "hypotheses", "conclusions", "minimax", "notes"})
    CHECK(inst.contains(key));
  const auto& m = inst["minimax"][0];
  for (const char* key : {"k", "direct", "candidate", "probe_min", "refined", "status"}) CHECK(m.contains(key));
  CHECK(j["summary"]["pass"].get<int>() + j["summary"]["fail"].get<int>() + j["summary"]["na"].get<int>() == 2);
  CHECK(exit_code(j) == 0);
}

TEST_CASE("sweep along an off-diagonal 2x2 perturbation") {
  Instance in;
  in.id = "closed-form";
  in.spec.kind = InstanceKind::offdiag_op;
  Vector d(2);
  d << 1, -1;
  in.A = SymMatrix::diagonal(d);
  const double v = 0.7;
  Matrix m(2, 2);
  m << 0, v, v, 0;
  in.V = SymMatrix(m);
  in.gamma = 0.0;
  auto s = run_sweep(in, -2.0, 2.0, 17, 1, {});
  REQUIRE(s.k_max == 1);
  for (std::size_t i = 0; i < s.t.size(); ++i)
    CHECK(s.values[i](0) == doctest::Approx(std::sqrt(1.0 + s.t[i] * s.t[i] * v * v)).epsilon(1e-14));
  CHECK(s.report.passed());
  CHECK(s.max_quotient <= v);
  CHECK(s.lipschitz_bound == doctest::Approx(v));

  auto single = run_sweep(in, 0.5, 0.5, 2, 1, {});
  CHECK(single.values[0](0) == single.values[1](0));
  CHECK(single.max_quotient == 0.0);
}

TEST_CASE("sweeps on random instances match direct spectra") {
  for (auto kind : {InstanceKind::bounded_pert, InstanceKind::offdiag_op, InstanceKind::offdiag_form}) {
    InstanceSpec spec;
    spec.kind = kind;
    spec.dim = 30;
    Instance in = generate(spec, 31);
    auto s = run_sweep(in, -1.5, 1.5, 13, 4, {});
    CHECK(s.report.passed());
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      if (!s.valid[i]) continue;
      Vector all = eigenvalues(in.A + s.t[i] * in.V);
      const int below = static_cast<int>(all.size() - s.values[i].size());
      const double shift = kind == InstanceKind::offdiag_form ? in.gamma : 0.0;
      for (int k = 0; k < s.k_max; ++k)
        CHECK(s.values[i](k) == doctest::Approx(all(below + k) - shift).epsilon(1e-10));
    }
  }
  const fs::path dir = scratch() / "sweep";
  REQUIRE(run("gen --kind offdiag-op --dim 20 --seed 8 --out " + dir.string()) == 0);
  CHECK(run("sweep --in " + dir.string() + " --t -1:1:9 --kmax 3 --csv " + (scratch() / "s.csv").string()) == 0);
  CHECK(slurp(scratch() / "s.csv").rfind("t,valid,lambda_1,lambda_2,lambda_3\n", 0) == 0);
  CHECK(run("sweep --in " + dir.string() + " --t 1:2") == 2);
}

TEST_CASE("stokes command") {
  const fs::path csv = scratch() / "stokes.csv", json = scratch() / "stokes.json";
  CHECK(run("stokes --dim 1 --points 8 --nu 1 --vstar 0.5 --kmax 3 --levels 2 --csv " + csv.string() + " --json " +
            json.string()) == 0);
  const std::string text = slurp(csv);
  CHECK(text.rfind("points,k,nu_lambda_L,lambda_B,upper\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 7);
  auto j = nlohmann::json::parse(slurp(json));
  CHECK(j["levels"].size() == 2);
  CHECK(j["levels"][1]["points"] == 16);
  CHECK(j["levels"][0]["c_h"] == 1.0);
  CHECK(run("stokes --dim 3 --points 4") == 2);
  CHECK(run("stokes --dim 2 --points 40 --kmax 2") == 2);
}
