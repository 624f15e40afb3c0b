#include "structcorr/runner.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "structcorr/csv.hpp"
#include "structcorr/errors.hpp"
#include "structcorr/estimators.hpp"
#include "structcorr/inference.hpp"
#include "structcorr/manifest.hpp"
#include "structcorr/scan.hpp"
#include "structcorr/simulation.hpp"
#include "structcorr/svg_plot.hpp"
#include "structcorr/version.hpp"

namespace structcorr {

namespace {

namespace fs = std::filesystem;

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory: " + dir);
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path)
      : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw DataError("cannot write file: " + path);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }
  void close() {
    out_.close();
    if (!out_) throw DataError("failed writing file: " + path_);
  }

 private:
  std::string path_;
  std::ofstream out_;
};

std::string bool_cell(bool b) { return b ? "true" : "false"; }

}  // namespace

void run_simulate(const SimulateArgs& args) {
  RunConfig config = parse_config_file(args.config_path);
  apply_overrides(config, args.overrides);
  config.sim.validate();
  ensure_dir(args.out_dir);

  const SimulationReport report = monte_carlo_run(config.sim, args.workers);

  std::vector<std::string> outputs;

  {
    CsvWriter w(join_path(args.out_dir, "estimates.csv"));
    w.row({"scenario", "method", "k", "replicate", "alpha_hat", "flag"});
    for (const EstimateRecord& rec : report.estimates) {
      w.row({to_string(rec.scenario), to_string(rec.method),
             std::to_string(rec.k), std::to_string(rec.replicate + 1),
             format_double(rec.alpha_hat),
             rec.not_identifiable ? "not_identifiable" : "ok"});
    }
    w.close();
    outputs.push_back("estimates.csv");
  }

  {
    CsvWriter w(join_path(args.out_dir, "summary.csv"));
    w.row({"scenario", "method", "k", "mean", "sd", "theo_bias", "theo_var",
           "n_fail"});
    for (const SummaryRecord& rec : report.summary) {
      w.row({to_string(rec.scenario), to_string(rec.method),
             std::to_string(rec.k), format_double(rec.mean),
             format_double(rec.sd), format_double(rec.theo_bias),
             format_double(rec.theo_var), std::to_string(rec.n_fail)});
    }
    w.close();
    outputs.push_back("summary.csv");
  }

  const int n_k = config.sim.k_max - config.sim.k_min + 1;
  for (std::size_t si = 0; si < config.sim.scenarios.size(); ++si) {
    const Scenario scenario = config.sim.scenarios[si];
    const std::string name = "plot_" + to_string(scenario) + ".csv";
    CsvWriter w(join_path(args.out_dir, name));
    w.row({"k", "cpc_mean", "cpc_lo", "cpc_hi", "psc_mean", "psc_lo",
           "psc_hi"});
    PlotSeries cpc_series{"cpc", "#1f77b4", {}, {}, {}};
    PlotSeries psc_series{"psc", "#ff7f0e", {}, {}, {}};
    for (int ki = 0; ki < n_k; ++ki) {
      const SummaryRecord& c = report.summary[si * 2 * n_k + ki];
      const SummaryRecord& s = report.summary[si * 2 * n_k + n_k + ki];
      w.row({std::to_string(c.k), format_double(c.mean),
             format_double(c.mean - c.sd), format_double(c.mean + c.sd),
             format_double(s.mean), format_double(s.mean - s.sd),
             format_double(s.mean + s.sd)});
      cpc_series.x.push_back(c.k);
      cpc_series.mean.push_back(c.mean);
      cpc_series.half_width.push_back(c.sd);
      psc_series.x.push_back(s.k);
      psc_series.mean.push_back(s.mean);
      psc_series.half_width.push_back(s.sd);
    }
    w.close();
    outputs.push_back(name);
    if (args.svg) {
      const std::string svg_name = "plot_" + to_string(scenario) + ".svg";
      const std::string svg = render_band_plot_svg(
          "estimate vs k, " + to_string(scenario), {cpc_series, psc_series});
      std::ofstream out(join_path(args.out_dir, svg_name), std::ios::binary);
      if (!out) throw DataError("cannot write file: " + svg_name);
      out << svg;
      out.close();
      outputs.push_back(svg_name);
    }
  }

  RunManifest manifest;
  {
    std::ostringstream cmd;
    cmd << "simulate --config " << args.config_path;
    for (const std::string& o : args.overrides) cmd << " --set " << o;
    cmd << " --out-dir " << args.out_dir;
    if (args.svg) cmd << " --svg";
    manifest.command = cmd.str();
  }
  manifest.tool_version = kVersion;
  manifest.config = config.as_map();
  manifest.inputs[args.config_path] = fnv1a64_file(args.config_path);
  manifest.outputs = outputs;
  write_manifest(manifest, join_path(args.out_dir, "manifest.json"));

  std::cout << "simulate: " << config.sim.scenarios.size() << " scenario(s), "
            << config.sim.replicates << " replicate(s), k in ["
            << config.sim.k_min << ", " << config.sim.k_max << "] -> "
            << args.out_dir << "\n";
}

void run_scan(const ScanArgs& args) {
  if (args.k < 0) throw ConfigError("k must be non-negative");
  if (args.bins < 1) throw ConfigError("bins must be positive");
  const Eigen::MatrixXd raw = load_matrix_csv(args.matrix_path, args.has_header);
  const Eigen::VectorXd y = load_vector_csv(args.response_path, args.has_header);
  const GenotypeMatrix x = center_normalize(raw);
  ensure_dir(args.out_dir);

  const ScanResult result = scan_all(x, y, args.k, args.workers);
  const ScanSummary summary =
      summarize_scan(result.records, args.thresholds, args.bins);

  std::vector<std::string> outputs;
  {
    CsvWriter w(join_path(args.out_dir, "scan.csv"));
    w.row({"j", "alpha_cpc", "alpha_psc", "abs_err", "rel_err", "flags"});
    for (const ScanRecord& rec : result.records) {
      std::string flag = "ok";
      if (rec.cpc_not_identifiable && rec.psc_not_identifiable) {
        flag = "cpc_psc_not_identifiable";
      } else if (rec.cpc_not_identifiable) {
        flag = "cpc_not_identifiable";
      } else if (rec.psc_not_identifiable) {
        flag = "psc_not_identifiable";
      } else if (rec.rel_err_undefined) {
        flag = "rel_err_undefined";
      }
      w.row({std::to_string(rec.target + 1), format_double(rec.alpha_cpc),
             format_double(rec.alpha_psc), format_double(rec.abs_err),
             format_double(rec.rel_err), flag});
    }
    w.close();
    outputs.push_back("scan.csv");
  }
  {
    CsvWriter w(join_path(args.out_dir, "histogram.csv"));
    w.row({"metric", "bin_lo", "bin_hi", "count"});
    for (const HistogramBin& b : summary.abs_hist) {
      w.row({"abs_err", format_double(b.lo), format_double(b.hi),
             std::to_string(b.count)});
    }
    for (const HistogramBin& b : summary.rel_hist) {
      w.row({"rel_err", format_double(b.lo), format_double(b.hi),
             std::to_string(b.count)});
    }
    w.close();
    outputs.push_back("histogram.csv");
  }

  RunManifest manifest;
  {
    std::ostringstream cmd;
    cmd << "scan --matrix " << args.matrix_path << " --response "
        << args.response_path << " --k " << args.k;
    manifest.command = cmd.str();
  }
  manifest.tool_version = kVersion;
  manifest.config["k"] = std::to_string(args.k);
  manifest.config["bins"] = std::to_string(args.bins);
  manifest.config["has_header"] = bool_cell(args.has_header);
  {
    std::string ts;
    for (const double t : args.thresholds) {
      if (!ts.empty()) ts += ',';
      ts += format_double(t);
    }
    manifest.config["thresholds"] = ts;
  }
  manifest.inputs[args.matrix_path] = fnv1a64_file(args.matrix_path);
  manifest.inputs[args.response_path] = fnv1a64_file(args.response_path);
  manifest.outputs = outputs;
  write_manifest(manifest, join_path(args.out_dir, "manifest.json"));

  std::cout << "scan: " << result.records.size() << " columns at k = "
            << args.k << " (decompositions: psc "
            << result.counters.psc_decompositions << ", cpc "
            << result.counters.cpc_decompositions << ")\n";
  const long defined =
      static_cast<long>(result.records.size()) - summary.undefined;
  for (const ThresholdCount& tc : summary.exceedances) {
    std::cout << "rel_err > " << format_double(tc.threshold) << ": "
              << tc.count << " of " << defined << " defined columns\n";
  }
  std::cout << "rel_err undefined: " << summary.undefined << " columns\n";
}

void run_test(const TestArgs& args) {
  if (args.gamma_bound.has_value() == args.beta_path.has_value()) {
    throw ConfigError(
        "exactly one of --gamma-bound and --beta-truth is required");
  }
  if (args.sigma.has_value() == args.estimate_sigma_flag) {
    throw ConfigError(
        "exactly one of --sigma and --estimate-sigma is required");
  }
  if (args.k < 0) throw ConfigError("k must be non-negative");

  const Eigen::MatrixXd raw = load_matrix_csv(args.matrix_path, args.has_header);
  const Eigen::VectorXd y = load_vector_csv(args.response_path, args.has_header);
  const GenotypeMatrix x = center_normalize(raw);
  if (args.target < 1 || args.target > x.p()) {
    throw ConfigError("target column out of range: " +
                      std::to_string(args.target));
  }
  const int target = args.target - 1;
  ensure_dir(args.out_dir);

  const SpectralBasis basis = method_basis(x, Method::cpc, target);
  const FitResult fit_result = fit(x, y, Method::cpc, target, args.k, basis);

  double n_bound = 0.0;
  if (args.gamma_bound) {
    if (*args.gamma_bound < 0) {
      throw ConfigError("gamma bound must be non-negative");
    }
    n_bound = *args.gamma_bound;
  } else {
    // Truth coefficients are in the units of the columns as supplied; map
    // them onto the standardized columns before projecting.
    const Eigen::VectorXd beta_raw =
        load_vector_csv(*args.beta_path, args.has_header);
    if (beta_raw.size() != x.p()) {
      throw DataError("truth vector length does not match matrix columns");
    }
    const Eigen::VectorXd gamma =
        gamma_truth_cpc(to_design_units(x, beta_raw), target, basis);
    if (args.k > gamma.size()) {
      throw KTooLarge(args.k, static_cast<int>(gamma.size()));
    }
    n_bound = gamma.tail(gamma.size() - args.k).lpNorm<1>();
  }

  double sigma = 0.0;
  if (args.sigma) {
    sigma = *args.sigma;
  } else {
    sigma = estimate_sigma(fit_result.residuals, args.k);
  }

  const NdPair nd = compute_nd(x, target, args.k, n_bound, basis);
  const TestOutcome outcome =
      test_h0(fit_result.alpha_hat, nd.n, nd.d, sigma,
              args.estimate_sigma_flag, x.n(), args.level, args.dof, args.k);

  {
    CsvWriter w(join_path(args.out_dir, "test.csv"));
    w.row({"alpha_hat", "n_bound", "d", "sigma", "sigma_estimated", "level",
           "lower", "upper", "quantile", "dof", "reject"});
    w.row({format_double(outcome.alpha_hat), format_double(outcome.n_bound),
           format_double(outcome.d), format_double(outcome.sigma),
           bool_cell(outcome.sigma_estimated), format_double(outcome.level),
           format_double(outcome.lower), format_double(outcome.upper),
           format_double(outcome.quantile), std::to_string(outcome.dof),
           bool_cell(outcome.reject)});
    w.close();
  }

  RunManifest manifest;
  {
    std::ostringstream cmd;
    cmd << "test --matrix " << args.matrix_path << " --response "
        << args.response_path << " --target " << args.target << " --k "
        << args.k;
    manifest.command = cmd.str();
  }
  manifest.tool_version = kVersion;
  manifest.config["target"] = std::to_string(args.target);
  manifest.config["k"] = std::to_string(args.k);
  manifest.config["level"] = format_double(args.level);
  manifest.config["dof_convention"] = to_string(args.dof);
  manifest.config["has_header"] = bool_cell(args.has_header);
  if (args.gamma_bound) {
    manifest.config["gamma_bound"] = format_double(*args.gamma_bound);
  }
  if (args.sigma) {
    manifest.config["sigma"] = format_double(*args.sigma);
  } else {
    manifest.config["sigma"] = "estimated";
  }
  manifest.inputs[args.matrix_path] = fnv1a64_file(args.matrix_path);
  manifest.inputs[args.response_path] = fnv1a64_file(args.response_path);
  if (args.beta_path) {
    manifest.inputs[*args.beta_path] = fnv1a64_file(*args.beta_path);
  }
  manifest.outputs = {"test.csv"};
  write_manifest(manifest, join_path(args.out_dir, "manifest.json"));

  std::cout << "test: column " << args.target << " at k = " << args.k
            << ": alpha_hat = " << format_double(outcome.alpha_hat)
            << ", acceptance interval [" << format_double(outcome.lower)
            << ", " << format_double(outcome.upper) << "] -> "
            << (outcome.reject ? "reject" : "no rejection") << "\n";
}

void run_decompose(const DecomposeArgs& args) {
  const Eigen::MatrixXd raw = load_matrix_csv(args.matrix_path, args.has_header);
  const GenotypeMatrix x = center_normalize(raw);
  if (args.target < 1 || args.target > x.p()) {
    throw ConfigError("target column out of range: " +
                      std::to_string(args.target));
  }
  if (args.exclude && (*args.exclude < 1 || *args.exclude > x.p())) {
    throw ConfigError("excluded column out of range: " +
                      std::to_string(*args.exclude));
  }
  ensure_dir(args.out_dir);

  const Eigen::VectorXd x_target = x.values.col(args.target - 1);
  const Eigen::MatrixXd m =
      args.exclude ? drop_column(x.values, *args.exclude - 1) : x.values;
  const SpectralBasis basis = thin_svd(m);

  {
    CsvWriter w(join_path(args.out_dir, "spectrum.csv"));
    w.row({"component", "singular_value", "alignment"});
    for (int s = 0; s < basis.rank; ++s) {
      const double alignment = basis.left_vectors.col(s).dot(x_target);
      w.row({std::to_string(s + 1), format_double(basis.singular_values[s]),
             format_double(alignment)});
    }
    w.close();
  }

  RunManifest manifest;
  {
    std::ostringstream cmd;
    cmd << "decompose --matrix " << args.matrix_path << " --target "
        << args.target;
    if (args.exclude) cmd << " --exclude " << *args.exclude;
    manifest.command = cmd.str();
  }
  manifest.tool_version = kVersion;
  manifest.config["target"] = std::to_string(args.target);
  manifest.config["has_header"] = bool_cell(args.has_header);
  if (args.exclude) manifest.config["exclude"] = std::to_string(*args.exclude);
  manifest.inputs[args.matrix_path] = fnv1a64_file(args.matrix_path);
  manifest.outputs = {"spectrum.csv"};
  write_manifest(manifest, join_path(args.out_dir, "manifest.json"));

  std::cout << "decompose: rank " << basis.rank << ", leading singular value "
            << format_double(basis.rank > 0 ? basis.singular_values[0] : 0.0)
            << " -> " << args.out_dir << "\n";
}

}  // namespace structcorr
