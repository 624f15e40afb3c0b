#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "structcorr/estimators.hpp"
#include "structcorr/genotype.hpp"

namespace structcorr {

enum class Scenario { independent, dependent, binary, structured };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

struct ScenarioParams {
  double ar_rho = 0.5;         // row autocorrelation of the dependent scenario
  double structured_tau = 0.1; // noise scale of the structured scenario
};

// Raw (unstandardized) design draw with per-entry O(1) scale:
//  - independent: i.i.d. standard normal entries;
//  - dependent:   rows i.i.d. with stationary AR(1) cross-column covariance
//                 rho^|i-j| (recursive construction);
//  - binary:      i.i.d. entries drawn uniformly from {-1, +1};
//  - structured:  sqrt(n) times the construction: column 2 = unit vector g,
//                 columns 3..p = g + tau * (unit-norm noise), column 1 = unit
//                 vector orthogonalized against the span of columns 2..p.
// All structured building blocks are centered, so standardization only
// rescales. Same (scenario, n, p, params, seed) always returns the same
// matrix, bit for bit.
Eigen::MatrixXd gen_raw_design(Scenario scenario, int n, int p,
                               const ScenarioParams& params,
                               std::uint64_t seed);

// center_normalize(gen_raw_design(...)). For the structured scenario the
// alignment postcondition is asserted: the standardized first column must
// satisfy |x_1^T u| > 0.99 for one of the top-2 left singular vectors u of
// the full matrix, otherwise StructuredConstructionFailed is thrown (callers
// retry with a smaller tau).
GenotypeMatrix gen_design(Scenario scenario, int n, int p,
                          const ScenarioParams& params, std::uint64_t seed);

// Sparse coefficient vector: beta[0] = 1 always; s - 1 further positions
// drawn uniformly without replacement from the remaining p - 1 get
// independent uniform signs; the rest are 0. Requires 1 <= s <= p.
Eigen::VectorXd gen_beta(int p, int s, std::uint64_t seed);

// y = X beta + eps with eps i.i.d. normal(0, sigma^2). beta is interpreted in
// the units of x.values' columns. sigma = 0 gives the exact noiseless signal.
Eigen::VectorXd simulate_response(const GenotypeMatrix& x,
                                  const Eigen::VectorXd& beta, double sigma,
                                  std::uint64_t seed);

// Map a coefficient vector expressed in raw-column units into the units of
// the standardized columns: beta_design = beta_raw .* column_scales.
Eigen::VectorXd to_design_units(const GenotypeMatrix& x,
                                const Eigen::VectorXd& beta_raw);

// Reference full multivariate OLS coefficients via the pseudoinverse,
// independent of the estimator code paths. Requires more rows than columns
// and full column rank (RankDeficient otherwise).
Eigen::VectorXd oracle_full_ols(const Eigen::MatrixXd& x,
                                const Eigen::VectorXd& y);

struct SimulationConfig {
  int n = 0;
  int p = 0;
  int sparsity = 0;
  double sigma = 1.0;
  std::vector<Scenario> scenarios;
  ScenarioParams params;
  int k_min = 1;
  int k_max = 1;
  int replicates = 1;
  std::uint64_t seed = 0;
  // true: one (X, beta) draw shared by all replicates, fresh noise each time;
  // false: X, beta and noise are all redrawn per replicate.
  bool fixed_design = false;

  void validate() const;  // throws ConfigError naming the offending field
};

struct EstimateRecord {
  Scenario scenario = Scenario::independent;
  Method method = Method::cpc;
  int k = 0;
  int replicate = 0;
  double alpha_hat = 0.0;        // in generating (raw-column) units
  bool not_identifiable = false;
};

struct SummaryRecord {
  Scenario scenario = Scenario::independent;
  Method method = Method::cpc;
  int k = 0;
  int n_success = 0;
  int n_fail = 0;        // replicates whose fit raised NotIdentifiable
  double mean = 0.0;     // over successful replicates (NaN when none)
  double sd = 0.0;       // sample sd, NaN when fewer than 2 successes
  double theo_bias = 0.0;  // closed-form overlays averaged over replicates,
  double theo_var = 0.0;   // in generating units (NaN when never defined)
  int theo_n = 0;          // replicates contributing to the overlays
};

struct SimulationReport {
  std::vector<EstimateRecord> estimates;  // ordered (scenario, replicate, method, k)
  std::vector<SummaryRecord> summary;     // ordered (scenario, method, k)
};

// Monte Carlo sweep over every configured scenario, both methods and all k in
// [k_min, k_max], fitting target column 1 of each replicate's design on the
// replicate response. Replicate streams derive from mix_seed(seed, scenario,
// purpose, replicate), and aggregation order is fixed, so the report is
// bit-identical for a given config regardless of `workers` (0 = automatic).
SimulationReport monte_carlo_run(const SimulationConfig& config,
                                 int workers = 0);

// Worker-count resolution shared by the parallel entry points: an explicit
// request wins, otherwise the STRUCTCORR_THREADS environment variable,
// otherwise hardware concurrency.
int resolve_workers(int requested);

}  // namespace structcorr
