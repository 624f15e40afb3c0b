#pragma once

#include <vector>

#include <Eigen/Core>

#include "structcorr/genotype.hpp"

namespace structcorr {

struct ScanRecord {
  int target = 0;  // 0-based column index
  double alpha_cpc = 0.0;
  double alpha_psc = 0.0;
  double abs_err = 0.0;  // |alpha_cpc - alpha_psc|, NaN when either fit failed
  double rel_err = 0.0;  // abs_err / |alpha_psc|, NaN when flagged undefined
  bool cpc_not_identifiable = false;
  bool psc_not_identifiable = false;
  bool rel_err_undefined = false;  // |alpha_psc| < 1e-12 or a fit failed
};

struct ScanCounters {
  int psc_decompositions = 0;  // 1 in the naive path (full matrix, once)
  int cpc_decompositions = 0;  // p in the naive path (one per tested column)
};

struct ScanResult {
  std::vector<ScanRecord> records;  // one per column, in column order
  ScanCounters counters;
};

// Fit both methods at the given k for every column of a standardized matrix
// against the mean-centered response, and report the per-column disagreement
// between the two corrections. Deterministic for fixed inputs regardless of
// worker count.
ScanResult scan_all(const GenotypeMatrix& x, const Eigen::VectorXd& y, int k,
                    int workers = 0);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  long count = 0;
};

struct ThresholdCount {
  double threshold = 0.0;
  long count = 0;  // records with defined rel_err strictly above threshold
};

struct ScanSummary {
  std::vector<ThresholdCount> exceedances;
  long undefined = 0;  // records with rel_err flagged undefined
  std::vector<HistogramBin> abs_hist;
  std::vector<HistogramBin> rel_hist;
};

// Threshold exceedance counts (monotone non-increasing in the threshold) and
// fixed-width histograms over [0, max] of the defined values.
ScanSummary summarize_scan(const std::vector<ScanRecord>& records,
                           const std::vector<double>& thresholds,
                           int bins = 50);

}  // namespace structcorr
