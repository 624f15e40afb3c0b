// Command-line front end: simulate | scan | test | decompose.
//
// Exit codes: 0 success, 1 configuration/usage errors, 2 data errors
// (unreadable or malformed inputs), 3 numerical failures.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "structcorr/config.hpp"
#include "structcorr/errors.hpp"
#include "structcorr/runner.hpp"
#include "structcorr/version.hpp"

namespace {

int dispatch(int argc, char** argv) {
  CLI::App app{"principal-component corrected association toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("structcorr ") +
                                        structcorr::kVersion);

  // --- simulate ---------------------------------------------------------
  structcorr::SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Monte Carlo sweep over scenarios, methods and k");
  sim->add_option("--config", sim_args.config_path,
                  "key = value configuration file")
      ->required();
  sim->add_option("--set", sim_args.overrides,
                  "override a config key (key=value, repeatable)");
  sim->add_option("--out-dir", sim_args.out_dir, "output directory");
  sim->add_option("--workers", sim_args.workers,
                  "worker threads (0 = automatic)");
  sim->add_flag("--svg", sim_args.svg, "also write per-scenario SVG plots");

  // --- scan --------------------------------------------------------------
  structcorr::ScanArgs scan_args;
  CLI::App* scan = app.add_subcommand(
      "scan", "fit every column with both methods and compare");
  scan->add_option("--matrix", scan_args.matrix_path, "numeric CSV, n x p")
      ->required();
  scan->add_option("--response", scan_args.response_path,
                   "single-column CSV, length n")
      ->required();
  scan->add_flag("--header", scan_args.has_header,
                 "inputs carry a header row");
  scan->add_option("--k", scan_args.k, "number of correction components");
  scan->add_option("--thresholds", scan_args.thresholds,
                   "relative-difference thresholds to count")
      ->delimiter(',');
  scan->add_option("--bins", scan_args.bins, "histogram bin count");
  scan->add_option("--out-dir", scan_args.out_dir, "output directory");
  scan->add_option("--workers", scan_args.workers,
                   "worker threads (0 = automatic)");

  // --- test ---------------------------------------------------------------
  structcorr::TestArgs test_args;
  std::string dof_name = "n-1";
  double gamma_bound = 0.0;
  std::string beta_path;
  double sigma_known = 0.0;
  CLI::App* test = app.add_subcommand(
      "test", "reliable zero-coefficient decision for one column");
  test->add_option("--matrix", test_args.matrix_path, "numeric CSV, n x p")
      ->required();
  test->add_option("--response", test_args.response_path,
                   "single-column CSV, length n")
      ->required();
  test->add_flag("--header", test_args.has_header,
                 "inputs carry a header row");
  test->add_option("--target", test_args.target, "tested column (1-based)");
  test->add_option("--k", test_args.k, "number of correction components");
  test->add_option("--level", test_args.level, "test level in (0, 1)");
  CLI::Option* opt_bound = test->add_option(
      "--gamma-bound", gamma_bound,
      "bound on the l1 norm of the component coefficients beyond k");
  CLI::Option* opt_beta = test->add_option(
      "--beta-truth", beta_path,
      "single-column CSV of true coefficients (raw column units)");
  opt_bound->excludes(opt_beta);
  CLI::Option* opt_sigma =
      test->add_option("--sigma", sigma_known, "known noise scale");
  CLI::Option* opt_est = test->add_flag(
      "--estimate-sigma", test_args.estimate_sigma_flag,
      "estimate the noise scale from the fit residuals");
  opt_sigma->excludes(opt_est);
  test->add_option("--dof-convention", dof_name,
                   "Student dof rule when sigma is estimated: n-1 or n-k-1");
  test->add_option("--out-dir", test_args.out_dir, "output directory");

  // --- decompose -----------------------------------------------------------
  structcorr::DecomposeArgs dec_args;
  int exclude = 0;
  CLI::App* dec = app.add_subcommand(
      "decompose", "singular spectrum and target-column alignments");
  dec->add_option("--matrix", dec_args.matrix_path, "numeric CSV, n x p")
      ->required();
  dec->add_flag("--header", dec_args.has_header, "input carries a header row");
  dec->add_option("--target", dec_args.target,
                  "column whose alignments are reported (1-based)");
  CLI::Option* opt_excl = dec->add_option(
      "--exclude", exclude, "drop this column before decomposing (1-based)");
  dec->add_option("--out-dir", dec_args.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // prints the error or the requested help/version text
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (sim->parsed()) {
    structcorr::run_simulate(sim_args);
  } else if (scan->parsed()) {
    structcorr::run_scan(scan_args);
  } else if (test->parsed()) {
    if (opt_bound->count() > 0) test_args.gamma_bound = gamma_bound;
    if (opt_beta->count() > 0) test_args.beta_path = beta_path;
    if (opt_sigma->count() > 0) test_args.sigma = sigma_known;
    test_args.dof = structcorr::dof_convention_from_string(dof_name);
    structcorr::run_test(test_args);
  } else if (dec->parsed()) {
    if (opt_excl->count() > 0) dec_args.exclude = exclude;
    structcorr::run_decompose(dec_args);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const structcorr::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const structcorr::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const structcorr::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
