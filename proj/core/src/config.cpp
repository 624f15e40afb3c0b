#include "structcorr/config.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "structcorr/csv.hpp"
#include "structcorr/errors.hpp"

namespace structcorr {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b &&
         (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r'))
    --e;
  return s.substr(b, e - b);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = first + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("bad value for " + key + ": '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("bad value for " + key + ": '" + value +
                    "' (expected true/false)");
}

std::vector<Scenario> parse_scenarios(const std::string& value) {
  if (value == "all") {
    return {Scenario::independent, Scenario::dependent, Scenario::binary,
            Scenario::structured};
  }
  std::vector<Scenario> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) {
      throw ConfigError("empty scenario name in '" + value + "'");
    }
    out.push_back(scenario_from_string(item));
  }
  if (out.empty()) throw ConfigError("scenario list is empty");
  return out;
}

void apply_key(RunConfig& config, const std::string& key,
               const std::string& value) {
  if (key == "n") {
    config.sim.n = parse_number<int>(key, value);
  } else if (key == "p") {
    config.sim.p = parse_number<int>(key, value);
  } else if (key == "sparsity") {
    config.sim.sparsity = parse_number<int>(key, value);
  } else if (key == "sigma") {
    config.sim.sigma = parse_number<double>(key, value);
  } else if (key == "scenario") {
    config.sim.scenarios = parse_scenarios(value);
  } else if (key == "ar_rho") {
    config.sim.params.ar_rho = parse_number<double>(key, value);
  } else if (key == "structured_tau") {
    config.sim.params.structured_tau = parse_number<double>(key, value);
  } else if (key == "k_min") {
    config.sim.k_min = parse_number<int>(key, value);
  } else if (key == "k_max") {
    config.sim.k_max = parse_number<int>(key, value);
  } else if (key == "replicates") {
    config.sim.replicates = parse_number<int>(key, value);
  } else if (key == "seed") {
    config.sim.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "fixed_design") {
    config.sim.fixed_design = parse_bool(key, value);
  } else if (key == "dof_convention") {
    config.dof = dof_convention_from_string(value);
  } else {
    throw ConfigError("unknown config key: '" + key + "'");
  }
}

}  // namespace

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  RunConfig config;
  std::set<std::string> seen;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    }
    if (!seen.insert(key).second) {
      throw ConfigError("duplicate config key: '" + key + "'");
    }
    apply_key(config, key, value);
  }

  for (const char* required : {"n", "p", "sparsity", "scenario"}) {
    if (!seen.count(required)) {
      throw ConfigError(std::string("missing required config key: '") +
                        required + "'");
    }
  }
  return config;
}

void apply_overrides(RunConfig& config,
                     const std::vector<std::string>& overrides) {
  for (const std::string& item : overrides) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("override '" + item + "': expected key=value");
    }
    const std::string key = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("override '" + item + "': empty key");
    }
    apply_key(config, key, value);
  }
}

std::map<std::string, std::string> RunConfig::as_map() const {
  std::map<std::string, std::string> m;
  m["n"] = std::to_string(sim.n);
  m["p"] = std::to_string(sim.p);
  m["sparsity"] = std::to_string(sim.sparsity);
  m["sigma"] = format_double(sim.sigma);
  std::string scenario_list;
  for (const Scenario s : sim.scenarios) {
    if (!scenario_list.empty()) scenario_list += ',';
    scenario_list += to_string(s);
  }
  m["scenario"] = scenario_list;
  m["ar_rho"] = format_double(sim.params.ar_rho);
  m["structured_tau"] = format_double(sim.params.structured_tau);
  m["k_min"] = std::to_string(sim.k_min);
  m["k_max"] = std::to_string(sim.k_max);
  m["replicates"] = std::to_string(sim.replicates);
  m["seed"] = std::to_string(sim.seed);
  m["fixed_design"] = sim.fixed_design ? "true" : "false";
  m["dof_convention"] = to_string(dof);
  return m;
}

DofConvention dof_convention_from_string(const std::string& name) {
  if (name == "n-1") return DofConvention::n_minus_1;
  if (name == "n-k-1") return DofConvention::n_minus_k_minus_1;
  throw ConfigError("unknown dof_convention: '" + name +
                    "' (expected n-1 or n-k-1)");
}

std::string to_string(DofConvention convention) {
  return convention == DofConvention::n_minus_1 ? "n-1" : "n-k-1";
}

}  // namespace structcorr
