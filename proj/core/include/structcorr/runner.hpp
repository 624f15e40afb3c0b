#pragma once

#include <optional>
#include <string>
#include <vector>

#include "structcorr/config.hpp"

namespace structcorr {

// Implementations of the CLI subcommands, callable as library functions so
// they can be tested without spawning processes. Each writes its data files
// plus a manifest into out_dir (created if missing) and prints a short
// summary to stdout. Errors propagate as the usual hierarchy; the CLI maps
// them to exit codes.

struct SimulateArgs {
  std::string config_path;
  std::vector<std::string> overrides;  // key=value
  std::string out_dir = ".";
  int workers = 0;     // 0: STRUCTCORR_THREADS env var, then hardware
  bool svg = false;    // additionally emit per-scenario SVG mean/sd plots
};

// Writes estimates.csv, summary.csv, plot_<scenario>.csv (and .svg with
// svg = true), manifest.json.
void run_simulate(const SimulateArgs& args);

struct ScanArgs {
  std::string matrix_path;
  std::string response_path;
  bool has_header = false;
  int k = 10;
  std::vector<double> thresholds = {0.5, 1.0};
  int bins = 50;
  std::string out_dir = ".";
  int workers = 0;
};

// Standardizes the matrix, mean-centers the response, scans every column and
// writes scan.csv, histogram.csv, manifest.json; prints threshold counts.
void run_scan(const ScanArgs& args);

struct TestArgs {
  std::string matrix_path;
  std::string response_path;
  bool has_header = false;
  int target = 1;  // 1-based column index
  int k = 10;
  double level = 0.05;
  std::optional<double> gamma_bound;     // N supplied directly
  std::optional<std::string> beta_path;  // or derived from a truth vector
  std::optional<double> sigma;           // known noise scale
  bool estimate_sigma_flag = false;      // or estimated from fit residuals
  DofConvention dof = DofConvention::n_minus_1;
  std::string out_dir = ".";
};

// Writes test.csv (single data row) and manifest.json; prints the decision.
void run_test(const TestArgs& args);

struct DecomposeArgs {
  std::string matrix_path;
  bool has_header = false;
  std::optional<int> exclude;  // 1-based column to drop before decomposing
  int target = 1;              // 1-based column whose alignments are reported
  std::string out_dir = ".";
};

// Writes spectrum.csv (component index, singular value, alignment with the
// target column) and manifest.json.
void run_decompose(const DecomposeArgs& args);

}  // namespace structcorr
