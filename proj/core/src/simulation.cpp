#include "structcorr/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <thread>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "parallel.hpp"
#include "structcorr/errors.hpp"
#include "structcorr/rng.hpp"

namespace structcorr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Eigen::VectorXd centered_unit_normal(Rng& rng, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.normal();
  v.array() -= v.mean();
  const double norm = v.norm();
  if (norm < 1e-12) {
    throw StructuredConstructionFailed("degenerate direction draw");
  }
  return v / norm;
}

Eigen::MatrixXd raw_independent(Rng& rng, int n, int p) {
  Eigen::MatrixXd x(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) x(i, j) = rng.normal();
  }
  return x;
}

// Stationary AR(1) across columns within each row: cov(x_i, x_j) = rho^|i-j|.
// At rho = 0 this consumes the stream in the same order as the independent
// draw and reproduces it bit for bit.
Eigen::MatrixXd raw_dependent(Rng& rng, int n, int p, double rho) {
  const double innovation = std::sqrt(1.0 - rho * rho);
  Eigen::MatrixXd x(n, p);
  for (int i = 0; i < n; ++i) {
    double prev = 0.0;
    for (int j = 0; j < p; ++j) {
      const double z = rng.normal();
      prev = (j == 0) ? z : rho * prev + innovation * z;
      x(i, j) = prev;
    }
  }
  return x;
}

Eigen::MatrixXd raw_binary(Rng& rng, int n, int p) {
  Eigen::MatrixXd x(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) {
      x(i, j) = (rng.next_u64() >> 63) ? 1.0 : -1.0;
    }
  }
  return x;
}

// One dominant shared direction g carried by columns 2..p (up to tau-scaled
// noise), and a first column orthogonal to everything else, so that after
// standardization the first column is itself a leading principal direction.
// Built from centered unit vectors scaled by sqrt(n) so the raw matrix has
// the same per-entry scale as the other scenarios.
Eigen::MatrixXd raw_structured(Rng& rng, int n, int p, double tau) {
  const double scale = std::sqrt(static_cast<double>(n));
  const Eigen::VectorXd g = centered_unit_normal(rng, n);
  Eigen::VectorXd f = centered_unit_normal(rng, n);
  f -= g.dot(f) * g;
  if (f.norm() < 1e-8) {
    throw StructuredConstructionFailed("direction draws nearly collinear");
  }
  f.normalize();

  Eigen::MatrixXd x(n, p);
  x.col(1) = scale * g;
  for (int j = 2; j < p; ++j) {
    x.col(j) = scale * (g + tau * centered_unit_normal(rng, n));
  }

  // First column: f with the span of columns 2..p projected out, so it is
  // exactly orthogonal to the rest of the matrix.
  const Eigen::MatrixXd rest = x.rightCols(p - 1);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(rest);
  const Eigen::MatrixXd thin_q =
      qr.householderQ() * Eigen::MatrixXd::Identity(n, p - 1);
  Eigen::VectorXd f_res = f - thin_q * (thin_q.transpose() * f);
  const double res_norm = f_res.norm();
  if (res_norm < 1e-8) {
    throw StructuredConstructionFailed(
        "first column vanished under orthogonalization");
  }
  x.col(0) = scale * (f_res / res_norm);
  return x;
}

}  // namespace

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::independent: return "independent";
    case Scenario::dependent: return "dependent";
    case Scenario::binary: return "binary";
    case Scenario::structured: return "structured";
  }
  return "unknown";
}

Scenario scenario_from_string(const std::string& name) {
  if (name == "independent") return Scenario::independent;
  if (name == "dependent") return Scenario::dependent;
  if (name == "binary") return Scenario::binary;
  if (name == "structured") return Scenario::structured;
  throw ConfigError("unknown scenario '" + name + "'");
}

Eigen::MatrixXd gen_raw_design(Scenario scenario, int n, int p,
                               const ScenarioParams& params,
                               std::uint64_t seed) {
  if (n < 2 || p < 2) {
    throw ConfigError("design requires n >= 2 and p >= 2");
  }
  Rng rng(seed);
  switch (scenario) {
    case Scenario::independent: return raw_independent(rng, n, p);
    case Scenario::dependent: {
      if (!(params.ar_rho > -1.0 && params.ar_rho < 1.0)) {
        throw ConfigError("ar_rho must lie in (-1, 1)");
      }
      return raw_dependent(rng, n, p, params.ar_rho);
    }
    case Scenario::binary: return raw_binary(rng, n, p);
    case Scenario::structured: {
      if (!(params.structured_tau > 0.0)) {
        throw ConfigError("structured_tau must be positive");
      }
      return raw_structured(rng, n, p, params.structured_tau);
    }
  }
  throw ConfigError("unknown scenario value");
}

GenotypeMatrix gen_design(Scenario scenario, int n, int p,
                          const ScenarioParams& params, std::uint64_t seed) {
  GenotypeMatrix x = center_normalize(gen_raw_design(scenario, n, p, params, seed));
  if (scenario == Scenario::structured) {
    const SpectralBasis basis = thin_svd(x.values);
    if (basis.rank < 2) {
      throw StructuredConstructionFailed("structured matrix has rank < 2");
    }
    const Eigen::VectorXd top2 =
        basis.left_vectors.leftCols(2).transpose() * x.values.col(0);
    if (top2.cwiseAbs().maxCoeff() <= 0.99) {
      throw StructuredConstructionFailed(
          "first column is not aligned with a top-2 left singular vector");
    }
  }
  return x;
}

Eigen::VectorXd gen_beta(int p, int s, std::uint64_t seed) {
  if (s < 1 || s > p) {
    throw ConfigError("sparsity must lie in [1, p]");
  }
  Rng rng(seed);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  beta[0] = 1.0;

  // Partial Fisher-Yates over the non-target positions.
  std::vector<int> positions(p - 1);
  std::iota(positions.begin(), positions.end(), 1);
  for (int i = 0; i < s - 1; ++i) {
    const auto swap_with =
        static_cast<std::size_t>(rng.uniform_int(i, p - 2));
    std::swap(positions[i], positions[swap_with]);
    beta[positions[i]] = (rng.next_u64() >> 63) ? 1.0 : -1.0;
  }
  return beta;
}

Eigen::VectorXd simulate_response(const GenotypeMatrix& x,
                                  const Eigen::VectorXd& beta, double sigma,
                                  std::uint64_t seed) {
  if (beta.size() != x.p()) {
    throw DimensionMismatch("coefficient length does not match column count");
  }
  if (sigma < 0.0) {
    throw ConfigError("sigma must be non-negative");
  }
  Eigen::VectorXd y = x.values * beta;
  if (sigma > 0.0) {
    Rng rng(seed);
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += sigma * rng.normal();
  }
  return y;
}

Eigen::VectorXd to_design_units(const GenotypeMatrix& x,
                                const Eigen::VectorXd& beta_raw) {
  if (!x.standardized) {
    throw DataError("to_design_units requires a standardized matrix");
  }
  if (beta_raw.size() != x.p()) {
    throw DimensionMismatch("coefficient length does not match column count");
  }
  return beta_raw.cwiseProduct(x.column_scales);
}

Eigen::VectorXd oracle_full_ols(const Eigen::MatrixXd& x,
                                const Eigen::VectorXd& y) {
  if (x.rows() != y.size()) {
    throw DimensionMismatch("design and response have different row counts");
  }
  if (x.rows() <= x.cols()) {
    throw DimensionMismatch("full OLS requires more rows than columns");
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double tol = static_cast<double>(std::max(x.rows(), x.cols())) *
                     sv[0] * std::numeric_limits<double>::epsilon();
  if (sv[sv.size() - 1] <= tol) {
    throw RankDeficient("full OLS oracle requires full column rank");
  }
  const Eigen::VectorXd uty = svd.matrixU().transpose() * y;
  return svd.matrixV() * uty.cwiseQuotient(sv);
}

void SimulationConfig::validate() const {
  if (n < 2) throw ConfigError("config field n: must be >= 2");
  if (p < 2) throw ConfigError("config field p: must be >= 2");
  if (sparsity < 1 || sparsity > p) {
    throw ConfigError("config field sparsity: must lie in [1, p]");
  }
  if (!(sigma >= 0.0)) {
    throw ConfigError("config field sigma: must be non-negative");
  }
  if (scenarios.empty()) {
    throw ConfigError("config field scenario: at least one scenario required");
  }
  if (!(params.ar_rho > -1.0 && params.ar_rho < 1.0)) {
    throw ConfigError("config field ar_rho: must lie in (-1, 1)");
  }
  if (!(params.structured_tau > 0.0)) {
    throw ConfigError("config field structured_tau: must be positive");
  }
  if (k_min < 0) throw ConfigError("config field k_min: must be >= 0");
  if (k_max < k_min) throw ConfigError("config field k_max: must be >= k_min");
  if (k_max >= std::min(n, p)) {
    throw ConfigError("config field k_max: must be < min(n, p)");
  }
  if (replicates < 1) {
    throw ConfigError("config field replicates: must be >= 1");
  }
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("STRUCTCORR_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0 && parsed <= 4096) {
      return static_cast<int>(parsed);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

// Structured draws occasionally miss the alignment postcondition; retry the
// same stream with tau halved rather than aborting the whole run.
GenotypeMatrix gen_design_with_retry(Scenario scenario, int n, int p,
                                     ScenarioParams params,
                                     std::uint64_t seed) {
  constexpr int kMaxAttempts = 9;
  for (int attempt = 0;; ++attempt) {
    try {
      return gen_design(scenario, n, p, params, seed);
    } catch (const StructuredConstructionFailed&) {
      if (scenario != Scenario::structured || attempt + 1 >= kMaxAttempts) {
        throw;
      }
      params.structured_tau /= 2.0;
    }
  }
}

struct ReplicateOutput {
  // Indexed [method(0 = cpc, 1 = psc)][k - k_min].
  std::vector<double> alpha;      // generating units, NaN when failed
  std::vector<std::uint8_t> fail;
  std::vector<double> theo_bias;  // generating units, NaN when undefined
  std::vector<double> theo_var;
};

constexpr Method kMethodOrder[2] = {Method::cpc, Method::psc};

ReplicateOutput run_replicate(const SimulationConfig& config,
                              const GenotypeMatrix& x,
                              const Eigen::VectorXd& beta_raw,
                              std::uint64_t noise_seed) {
  const int n_k = config.k_max - config.k_min + 1;
  ReplicateOutput out;
  out.alpha.assign(2 * n_k, kNaN);
  out.fail.assign(2 * n_k, 0);
  out.theo_bias.assign(2 * n_k, kNaN);
  out.theo_var.assign(2 * n_k, kNaN);

  const Eigen::VectorXd beta_design = to_design_units(x, beta_raw);
  const Eigen::VectorXd y =
      simulate_response(x, beta_design, config.sigma, noise_seed);
  const double target_scale = x.column_scales[0];

  const SpectralBasis cpc_basis = thin_svd(drop_column(x.values, 0));
  const SpectralBasis psc_basis = thin_svd(x.values);

  for (int mi = 0; mi < 2; ++mi) {
    const Method method = kMethodOrder[mi];
    const SpectralBasis& basis = method == Method::cpc ? cpc_basis : psc_basis;
    for (int k = config.k_min; k <= config.k_max; ++k) {
      const int slot = mi * n_k + (k - config.k_min);
      try {
        const FitResult f = fit(x, y, method, 0, k, basis);
        out.alpha[slot] = f.alpha_hat / target_scale;
      } catch (const NotIdentifiable&) {
        out.fail[slot] = 1;
      } catch (const KTooLarge&) {
        out.fail[slot] = 1;
      }
      try {
        const TheoreticalMoments tm =
            method == Method::cpc
                ? cpc_moments(x, beta_design, 0, k,
                              config.sigma * config.sigma, basis)
                : psc_moments(x, beta_design, 0, k,
                              config.sigma * config.sigma, basis);
        out.theo_bias[slot] = tm.bias / target_scale;
        out.theo_var[slot] = tm.variance / (target_scale * target_scale);
      } catch (const NotIdentifiable&) {
      } catch (const KTooLarge&) {
      }
    }
  }
  return out;
}

}  // namespace

SimulationReport monte_carlo_run(const SimulationConfig& config, int workers) {
  config.validate();
  const int n_workers = resolve_workers(workers);
  const int n_k = config.k_max - config.k_min + 1;
  const int m_total = config.replicates;

  SimulationReport report;
  report.estimates.reserve(static_cast<std::size_t>(config.scenarios.size()) *
                           m_total * 2 * n_k);

  for (std::size_t si = 0; si < config.scenarios.size(); ++si) {
    const Scenario scenario = config.scenarios[si];

    // Fixed-design mode: one (X, beta) draw shared by every replicate.
    GenotypeMatrix fixed_x;
    Eigen::VectorXd fixed_beta;
    if (config.fixed_design) {
      fixed_x = gen_design_with_retry(
          scenario, config.n, config.p, config.params,
          mix_seed(config.seed, si, stream::design, 0));
      fixed_beta = gen_beta(config.p, config.sparsity,
                            mix_seed(config.seed, si, stream::beta, 0));
    }

    std::vector<ReplicateOutput> slots(m_total);
    detail::parallel_for(m_total, n_workers, [&](int m) {
      const std::uint64_t noise_seed =
          mix_seed(config.seed, si, stream::noise, m);
      if (config.fixed_design) {
        slots[m] = run_replicate(config, fixed_x, fixed_beta, noise_seed);
      } else {
        const GenotypeMatrix x = gen_design_with_retry(
            scenario, config.n, config.p, config.params,
            mix_seed(config.seed, si, stream::design, m));
        const Eigen::VectorXd beta = gen_beta(
            config.p, config.sparsity, mix_seed(config.seed, si, stream::beta, m));
        slots[m] = run_replicate(config, x, beta, noise_seed);
      }
    });

    // Deterministic aggregation in replicate order.
    for (int m = 0; m < m_total; ++m) {
      for (int mi = 0; mi < 2; ++mi) {
        for (int k = config.k_min; k <= config.k_max; ++k) {
          const int slot = mi * n_k + (k - config.k_min);
          EstimateRecord rec;
          rec.scenario = scenario;
          rec.method = kMethodOrder[mi];
          rec.k = k;
          rec.replicate = m;
          rec.alpha_hat = slots[m].alpha[slot];
          rec.not_identifiable = slots[m].fail[slot] != 0;
          report.estimates.push_back(rec);
        }
      }
    }

    for (int mi = 0; mi < 2; ++mi) {
      for (int k = config.k_min; k <= config.k_max; ++k) {
        const int slot = mi * n_k + (k - config.k_min);
        SummaryRecord row;
        row.scenario = scenario;
        row.method = kMethodOrder[mi];
        row.k = k;

        double sum = 0.0;
        double theo_bias_sum = 0.0;
        double theo_var_sum = 0.0;
        std::vector<double> values;
        values.reserve(m_total);
        for (int m = 0; m < m_total; ++m) {
          if (slots[m].fail[slot]) {
            ++row.n_fail;
          } else {
            values.push_back(slots[m].alpha[slot]);
            sum += slots[m].alpha[slot];
          }
          if (!std::isnan(slots[m].theo_bias[slot])) {
            theo_bias_sum += slots[m].theo_bias[slot];
            theo_var_sum += slots[m].theo_var[slot];
            ++row.theo_n;
          }
        }
        row.n_success = static_cast<int>(values.size());
        if (row.n_success > 0) {
          row.mean = sum / row.n_success;
          if (row.n_success > 1) {
            double ss = 0.0;
            for (const double v : values) ss += (v - row.mean) * (v - row.mean);
            row.sd = std::sqrt(ss / (row.n_success - 1));
          } else {
            row.sd = kNaN;
          }
        } else {
          row.mean = kNaN;
          row.sd = kNaN;
        }
        if (row.theo_n > 0) {
          row.theo_bias = theo_bias_sum / row.theo_n;
          row.theo_var = theo_var_sum / row.theo_n;
        } else {
          row.theo_bias = kNaN;
          row.theo_var = kNaN;
        }
        report.summary.push_back(row);
      }
    }
  }
  return report;
}

}  // namespace structcorr
