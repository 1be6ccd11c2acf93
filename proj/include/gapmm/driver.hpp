#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gapmm/generate.hpp"
#include "gapmm/theorems.hpp"

namespace gapmm {

inline constexpr const char* kVersion = "1.0.0";

struct RunConfig {
  std::uint64_t seed = 1;
  int dim_min = 20;
  int dim_max = 60;
  int trials = 500;
  int k_max = 5;
  double c = -1.0;
  double d = 1.0;
  Branch branch = Branch::lower;
  Tolerances tol;
  double tol_scale = 1.0;  // recorded in the report only
};

/// Checker names accepted by verify.
const std::vector<std::string>& theorem_ids();
/// Instance kind a checker runs on; heinz and form-sum draw their own data.
InstanceKind kind_for(const std::string& theorem);
bool needs_instances(const std::string& theorem);

CheckConfig check_config(const RunConfig& cfg, std::uint64_t seed);
TheoremReport run_check(const std::string& theorem, const Instance& inst, const RunConfig& cfg);

/// Generated instance `index` of a batch.
Instance batch_instance(const std::string& theorem, int index, const RunConfig& cfg);
TheoremReport batch_report(const std::string& theorem, int index, const RunConfig& cfg);

nlohmann::ordered_json report_json(const std::string& theorem, const std::vector<std::string>& ids,
                                   const std::vector<std::string>& kinds, const std::vector<TheoremReport>& reports,
                                   const RunConfig& cfg, const std::string& source);
nlohmann::ordered_json verify_batch(const std::string& theorem, int count, const RunConfig& cfg);
nlohmann::ordered_json verify_instances(const std::string& theorem, const std::vector<Instance>& insts,
                                        const RunConfig& cfg);
/// An instance directory, or a directory of instance directories.
std::vector<Instance> load_instances(const std::string& path);
/// 0 when no applicable conclusion failed, 1 otherwise.
int exit_code(const nlohmann::ordered_json& report);

struct SweepResult {
  std::vector<double> t;
  std::vector<bool> valid;
  std::vector<Vector> values;  // eigenvalues above the gap, one row per t
  int k_max = 0;
  double max_quotient = 0;     // largest |difference quotient| between neighbours
  double lipschitz_bound = 0;  // constant bound, or the largest local bound
  TheoremReport report;
};
SweepResult run_sweep(const Instance& inst, double t0, double t1, int steps, int k_max, const Tolerances& tol);
std::string sweep_csv(const SweepResult& s);

struct StokesRun {
  nlohmann::ordered_json report;
  std::string csv;
  bool passed = true;
};
/// Bounds on `levels` refinements starting at `points` (step 4 in 2D, doubling in 1D).
StokesRun run_stokes(int space_dim, int points, double nu, double vstar, int k_max, int levels, const RunConfig& cfg,
                     int size_cap = 2000);

}  // namespace gapmm
