#pragma once

#include <map>
#include <string>
#include <vector>

#include "structcorr/inference.hpp"
#include "structcorr/simulation.hpp"

namespace structcorr {

// Flat key = value configuration for the simulation runner. Recognized keys:
//   n, p, sparsity, sigma, scenario, ar_rho, structured_tau, k_min, k_max,
//   replicates, seed, fixed_design, dof_convention
// scenario accepts one name, a comma-separated list, or "all"; fixed_design
// accepts true/false/1/0; dof_convention accepts "n-1" (default) or "n-k-1".
// Lines are `key = value`, blank lines and '#' comments allowed.
struct RunConfig {
  SimulationConfig sim;
  DofConvention dof = DofConvention::n_minus_1;

  // Normalized key -> value view of every setting, for manifests and
  // deterministic echoing.
  std::map<std::string, std::string> as_map() const;
};

// Parse a config file. Throws ConfigError naming the offending key or line on
// unknown keys, bad values, or missing required keys.
RunConfig parse_config_file(const std::string& path);

// Apply `key=value` override strings (same keys as the file) on top of a
// parsed config.
void apply_overrides(RunConfig& config,
                     const std::vector<std::string>& overrides);

DofConvention dof_convention_from_string(const std::string& name);
std::string to_string(DofConvention convention);

}  // namespace structcorr
