#include "structcorr/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "parallel.hpp"
#include "structcorr/errors.hpp"
#include "structcorr/estimators.hpp"
#include "structcorr/simulation.hpp"

namespace structcorr {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

ScanResult scan_all(const GenotypeMatrix& x, const Eigen::VectorXd& y, int k,
                    int workers) {
  if (!x.standardized) {
    throw DataError("scan requires a standardized matrix");
  }
  if (y.size() != x.n()) {
    throw DimensionMismatch("response length does not match matrix rows");
  }
  if (k < 0) {
    throw ConfigError("k must be non-negative");
  }

  Eigen::VectorXd yc = y;
  yc.array() -= yc.mean();

  std::atomic<int> cpc_decompositions{0};
  const SpectralBasis psc_basis = thin_svd(x.values);
  const int p = static_cast<int>(x.p());

  ScanResult result;
  result.records.assign(p, ScanRecord{});
  result.counters.psc_decompositions = 1;

  detail::parallel_for(p, resolve_workers(workers), [&](int j) {
    ScanRecord rec;
    rec.target = j;
    rec.alpha_cpc = kNaN;
    rec.alpha_psc = kNaN;
    rec.abs_err = kNaN;
    rec.rel_err = kNaN;

    try {
      const SpectralBasis cpc_basis = thin_svd(drop_column(x.values, j));
      cpc_decompositions.fetch_add(1, std::memory_order_relaxed);
      rec.alpha_cpc = fit(x, yc, Method::cpc, j, k, cpc_basis).alpha_hat;
    } catch (const NotIdentifiable&) {
      rec.cpc_not_identifiable = true;
    } catch (const KTooLarge&) {
      rec.cpc_not_identifiable = true;
    }
    try {
      rec.alpha_psc = fit(x, yc, Method::psc, j, k, psc_basis).alpha_hat;
    } catch (const NotIdentifiable&) {
      rec.psc_not_identifiable = true;
    } catch (const KTooLarge&) {
      rec.psc_not_identifiable = true;
    }

    if (!rec.cpc_not_identifiable && !rec.psc_not_identifiable) {
      rec.abs_err = std::abs(rec.alpha_cpc - rec.alpha_psc);
      if (std::abs(rec.alpha_psc) < 1e-12) {
        rec.rel_err_undefined = true;
      } else {
        rec.rel_err = rec.abs_err / std::abs(rec.alpha_psc);
      }
    } else {
      rec.rel_err_undefined = true;
    }
    result.records[j] = rec;
  });

  result.counters.cpc_decompositions = cpc_decompositions.load();
  return result;
}

namespace {

std::vector<HistogramBin> build_histogram(const std::vector<double>& values,
                                          int bins) {
  std::vector<HistogramBin> hist;
  if (values.empty() || bins < 1) return hist;
  const double max_value = *std::max_element(values.begin(), values.end());
  const double hi = max_value > 0.0 ? max_value : 1.0;
  const double width = hi / bins;
  hist.resize(bins);
  for (int b = 0; b < bins; ++b) {
    hist[b].lo = b * width;
    hist[b].hi = (b + 1) * width;
  }
  for (const double v : values) {
    int b = static_cast<int>(v / width);
    if (b >= bins) b = bins - 1;  // max lands in the last (closed) bin
    if (b < 0) b = 0;
    ++hist[b].count;
  }
  return hist;
}

}  // namespace

ScanSummary summarize_scan(const std::vector<ScanRecord>& records,
                           const std::vector<double>& thresholds, int bins) {
  ScanSummary summary;
  std::vector<double> abs_values;
  std::vector<double> rel_values;
  for (const ScanRecord& rec : records) {
    if (!std::isnan(rec.abs_err)) abs_values.push_back(rec.abs_err);
    if (rec.rel_err_undefined) {
      ++summary.undefined;
    } else if (!std::isnan(rec.rel_err)) {
      rel_values.push_back(rec.rel_err);
    }
  }
  for (const double t : thresholds) {
    ThresholdCount tc;
    tc.threshold = t;
    tc.count = std::count_if(rel_values.begin(), rel_values.end(),
                             [&](double v) { return v > t; });
    summary.exceedances.push_back(tc);
  }
  summary.abs_hist = build_histogram(abs_values, bins);
  summary.rel_hist = build_histogram(rel_values, bins);
  return summary;
}

}  // namespace structcorr
