#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "gapmm/perturb.hpp"

namespace gapmm {

enum class InstanceKind { bounded_pert, offdiag_op, offdiag_form, unbounded_style, semibounded, stokes };
const char* to_string(InstanceKind k);
InstanceKind parse_kind(const std::string& s);

struct InstanceSpec {
  InstanceKind kind = InstanceKind::bounded_pert;
  int dim = 20;  // matrix dimension; interior points per axis for stokes
  double c = -1.0;
  double d = 1.0;
  double scale = -1.0;  // perturbation scale; negative draws one at random
  Branch branch = Branch::lower;
};

struct Instance {
  std::string id;
  InstanceSpec spec;
  std::uint64_t seed = 0;
  SymMatrix A;
  SymMatrix V;
  std::optional<SymMatrix> V1;  // larger partner of V (bounded-pert only)
  double gamma = 0.0;
  nlohmann::ordered_json margins = nlohmann::ordered_json::object();
  SymMatrix B() const { return A + V; }
};

/// Draws an instance satisfying the hypotheses of its kind by construction.
Instance generate(const InstanceSpec& spec, std::uint64_t seed, const std::string& id = "");

/// A.txt, V.txt (V1.txt) and manifest.json.
void write_instance(const Instance& inst, const std::filesystem::path& dir);
Instance read_instance(const std::filesystem::path& dir);

}  // namespace gapmm
