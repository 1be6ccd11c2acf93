#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gapmm/driver.hpp"
#include "gapmm/errors.hpp"
#include "gapmm/generate.hpp"

namespace {

using namespace gapmm;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("write to " + path + " failed");
}

std::pair<double, double> parse_pair(const std::string& s, char sep) {
  const auto pos = s.find(sep);
  if (pos == std::string::npos) throw CLI::ValidationError("expected two values separated by '" + std::string(1, sep) + "': " + s);
  try {
    return {std::stod(s.substr(0, pos)), std::stod(s.substr(pos + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("not a number pair: " + s);
  }
}

void summarize(const nlohmann::ordered_json& report) {
  const auto& s = report["summary"];
  std::fprintf(stderr, "pass %d  fail %d  n/a %d\n", s["pass"].get<int>(), s["fail"].get<int>(), s["na"].get<int>());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral gap and minimax verification for perturbed symmetric matrices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  double tol_override = 0, tol_scale = 0;
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", tol_override, "Replace every tolerance by this value");
    sub->add_option("--tol-scale", tol_scale, "Multiply default tolerances (overrides GAPMM_TOL_SCALE)");
  };
  std::uint64_t seed = 1;

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  std::string kind = "bounded-pert", gap = "-1,1", out_dir, branch = "lower";
  int dim = 20;
  double scale = -1;
  gen->add_option("--kind", kind, "bounded-pert | offdiag-op | offdiag-form | unbounded-style | semibounded | stokes");
  gen->add_option("--dim", dim, "Matrix dimension (interior points for stokes)")->check(CLI::PositiveNumber);
  gen->add_option("--gap", gap, "Gap endpoints c,d");
  gen->add_option("--seed", seed);
  gen->add_option("--scale", scale, "Perturbation scale (random when omitted)");
  gen->add_option("--branch", branch)->check(CLI::IsMember({"lower", "upper"}));
  gen->add_option("--out", out_dir, "Output directory")->required();

  auto* verify = app.add_subcommand("verify", "Run a theorem checker");
  std::string thm, in_dir, json_out, dims = "20:60";
  int batch = 0, trials = 500, kmax = 5;
  verify->add_option("--thm", thm, "Checker id")->required()->check(CLI::IsMember(theorem_ids()));
  auto* in_opt = verify->add_option("--in", in_dir, "Instance directory, or directory of instances");
  auto* batch_opt = verify->add_option("--batch", batch, "Generate this many instances")->check(CLI::PositiveNumber);
  in_opt->excludes(batch_opt);
  verify->add_option("--json", json_out, "Report path ('-' for stdout)");
  verify->add_option("--seed", seed);
  verify->add_option("--dims", dims, "Dimension range a:b for batches");
  verify->add_option("--gap", gap, "Gap endpoints c,d for batches");
  verify->add_option("--branch", branch)->check(CLI::IsMember({"lower", "upper"}));
  verify->add_option("--trials", trials, "Random subspace probes per k")->check(CLI::NonNegativeNumber);
  verify->add_option("--kmax", kmax)->check(CLI::PositiveNumber);
  add_tol(verify);

  auto* stokes = app.add_subcommand("stokes", "Eigenvalue bounds for the discretized Stokes operator");
  int sdim = 1, points = 16, levels = 1, cap = 2000;
  double nu = 1.0, vstar = 1.0;
  std::string csv_out;
  stokes->add_option("--dim", sdim)->check(CLI::IsMember({1, 2}));
  stokes->add_option("--points", points, "Interior points per axis")->check(CLI::PositiveNumber);
  stokes->add_option("--nu", nu)->check(CLI::PositiveNumber);
  stokes->add_option("--vstar", vstar);
  stokes->add_option("--kmax", kmax)->check(CLI::PositiveNumber);
  stokes->add_option("--levels", levels)->check(CLI::PositiveNumber);
  stokes->add_option("--cap", cap, "Largest matrix size")->check(CLI::PositiveNumber);
  stokes->add_option("--seed", seed);
  stokes->add_option("--csv", csv_out);
  stokes->add_option("--json", json_out);
  add_tol(stokes);

  auto* sweep = app.add_subcommand("sweep", "Eigenvalue curves of A + tV");
  std::string trange = "-1:1:21";
  sweep->add_option("--in", in_dir, "Instance directory")->required();
  sweep->add_option("--t", trange, "a:b:steps");
  sweep->add_option("--kmax", kmax)->check(CLI::PositiveNumber);
  sweep->add_option("--csv", csv_out);
  sweep->add_option("--json", json_out);
  add_tol(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Tolerances tol = Tolerances::from_env();
    double recorded_scale = 1.0;
    if (const char* env = std::getenv("GAPMM_TOL_SCALE")) recorded_scale = std::atof(env);
    if (tol_scale > 0) {
      tol = Tolerances{}.scaled(tol_scale);
      recorded_scale = tol_scale;
    }
    if (tol_override > 0) tol = Tolerances::uniform(tol_override);

    if (*gen) {
      InstanceSpec spec;
      spec.kind = parse_kind(kind);
      spec.dim = dim;
      std::tie(spec.c, spec.d) = parse_pair(gap, ',');
      spec.scale = scale;
      spec.branch = branch == "upper" ? Branch::upper : Branch::lower;
      Instance inst = generate(spec, seed, kind + "-" + std::to_string(seed));
      write_instance(inst, out_dir);
      return 0;
    }

    RunConfig cfg;
    cfg.seed = seed;
    cfg.trials = trials;
    cfg.k_max = kmax;
    cfg.tol = tol;
    cfg.tol_scale = recorded_scale;

    if (*verify) {
      auto [lo, hi] = parse_pair(dims, ':');
      cfg.dim_min = static_cast<int>(lo);
      cfg.dim_max = static_cast<int>(hi);
      if (cfg.dim_min < 1 || cfg.dim_max < cfg.dim_min) throw CLI::ValidationError("bad --dims " + dims);
      std::tie(cfg.c, cfg.d) = parse_pair(gap, ',');
      cfg.branch = branch == "upper" ? Branch::upper : Branch::lower;
      nlohmann::ordered_json report;
      if (batch > 0) report = verify_batch(thm, batch, cfg);
      else if (!in_dir.empty()) report = verify_instances(thm, load_instances(in_dir), cfg);
      else throw CLI::ValidationError("verify needs --in or --batch");
      write_text(json_out.empty() ? "-" : json_out, report.dump(2) + "\n");
      summarize(report);
      return exit_code(report);
    }

    if (*stokes) {
      StokesRun run = run_stokes(sdim, points, nu, vstar, kmax, levels, cfg, cap);
      if (!csv_out.empty()) write_text(csv_out, run.csv);
      if (!json_out.empty() || csv_out.empty()) write_text(json_out.empty() ? "-" : json_out, run.report.dump(2) + "\n");
      return run.passed ? 0 : 1;
    }

    if (*sweep) {
      const auto first = trange.find(':'), second = trange.rfind(':');
      if (first == std::string::npos || first == second) throw CLI::ValidationError("--t expects a:b:steps");
      auto [t0, t1] = parse_pair(trange.substr(0, second), ':');
      int steps = 0;
      try {
        steps = std::stoi(trange.substr(second + 1));
      } catch (const std::exception&) {
        throw CLI::ValidationError("bad step count in --t " + trange);
      }
      SweepResult s = run_sweep(read_instance(in_dir), t0, t1, steps, kmax, tol);
      write_text(csv_out.empty() ? "-" : csv_out, sweep_csv(s));
      nlohmann::ordered_json j = to_json(s.report);
      j["max_quotient"] = s.max_quotient;
      j["lipschitz_bound"] = s.lipschitz_bound;
      if (!json_out.empty()) write_text(json_out, j.dump(2) + "\n");
      std::fprintf(stderr, "max difference quotient %.6g, bound %.6g\n", s.max_quotient, s.lipschitz_bound);
      return s.report.failures() == 0 ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
