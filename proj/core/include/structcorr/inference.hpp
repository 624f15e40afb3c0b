#pragma once

#include <Eigen/Core>

#include "structcorr/genotype.hpp"
#include "structcorr/spectral.hpp"

namespace structcorr {

// Degrees-of-freedom rule for the Student quantile when the noise scale is
// estimated: n - 1, or n - k - 1 matching the fitted model's residual dof.
enum class DofConvention { n_minus_1, n_minus_k_minus_1 };

struct NdPair {
  double n = 0.0;  // l1 bound on the component-truth tail, ||gamma_{k+1:r}||_1
  double d = 0.0;  // |1 - ||x_j^T U_1:k||^2| for unit-norm x_j
};

// Bias-bound ingredients for the reliable zero-coefficient test on the cpc
// fit of a standardized matrix. gamma_tail_l1 is either a user-supplied bound
// or the l1 norm of the truth tail. Throws DegenerateD when D < 1e-10.
NdPair compute_nd(const GenotypeMatrix& x, int target, int k,
                  double gamma_tail_l1);
NdPair compute_nd(const GenotypeMatrix& x, int target, int k,
                  double gamma_tail_l1, const SpectralBasis& cpc_basis);

struct TestOutcome {
  double alpha_hat = 0.0;
  double n_bound = 0.0;
  double d = 0.0;
  double sigma = 0.0;
  bool sigma_estimated = false;
  double level = 0.0;
  double lower = 0.0;     // acceptance interval for alpha_hat
  double upper = 0.0;
  double quantile = 0.0;  // z_{a/2} or t_{dof, a/2}
  int dof = 0;            // 0 when the normal quantile is used
  bool reject = false;
};

// Reject H0: alpha = 0 iff alpha_hat falls outside
//   [-N/D - q * sqrt(sigma^2 / D), N/D + q * sqrt(sigma^2 / D)]
// with q the standard normal upper a/2 quantile for known sigma, or the
// Student quantile (dof per `convention`, default n - 1) when sigma was
// estimated. Throws InvalidLevel unless 0 < level < 1.
TestOutcome test_h0(double alpha_hat, double n_bound, double d, double sigma,
                    bool sigma_estimated, long n, double level,
                    DofConvention convention = DofConvention::n_minus_1,
                    int k = 0);

// sqrt(||residuals||^2 / (n - k - 1)); throws InsufficientDof if n - k - 1 < 1.
double estimate_sigma(const Eigen::VectorXd& residuals, int k);

// Upper-tail-symmetric quantiles used by test_h0 (probability p in (0, 1)).
double normal_quantile(double p);
double student_quantile(double p, int dof);

}  // namespace structcorr
