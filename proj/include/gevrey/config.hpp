#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gevrey/bounds.hpp"
#include "gevrey/dynamics.hpp"
#include "gevrey/ic.hpp"
#include "gevrey/xform.hpp"

namespace gevrey {

struct OutputNames {
  std::string series = "series.txt";
  std::string report = "report.json";
  std::string params = "params.json";
};

// A fully parsed run description. The theorem member is assembled from the
// equation, the transform, and the explicit theorem block; parse_config
// rejects mismatched pairings (e.g. family 2 with anything but the triple
// transform over the damped Euler flow) before any numerics run.
struct RunConfig {
  EquationSpec equation;
  int truncation = 8;
  IntegrationParams time;
  ICSpec ic;
  std::vector<double> sobolev_indices;
  std::optional<TransformSpec> transform;
  std::optional<TheoremSpec> theorem;
  std::optional<double> sigma_check;
  BoundConstants constants;
  OutputNames output;
};

// Parses the schema_version 1 JSON config. Unknown keys, missing required
// keys, bad types, and invalid pairings all throw config_error with the
// offending key in the message. A random initial condition must get a seed,
// either inside the ic block or from the top-level "seed".
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

// --seed wins over both config seeds. Only meaningful for random ICs.
void apply_seed_override(RunConfig& cfg, std::uint64_t seed);

}  // namespace gevrey
