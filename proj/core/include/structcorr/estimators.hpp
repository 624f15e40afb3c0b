#pragma once

#include <string>

#include <Eigen/Core>

#include "structcorr/genotype.hpp"
#include "structcorr/least_squares.hpp"
#include "structcorr/spectral.hpp"

namespace structcorr {

// Two ways of building the correction components for a tested column:
//  - psc: components are the top-k left singular vectors of the full matrix,
//    so the tested column participates in its own correction;
//  - cpc: components are the top-k left singular vectors of the matrix with
//    the tested column removed.
enum class Method { psc, cpc };

std::string to_string(Method m);

// Singular basis the given method regresses on for target column j (0-based):
// thin SVD of X for psc, of X with column j dropped for cpc.
// Requires a standardized matrix.
SpectralBasis method_basis(const GenotypeMatrix& x, Method method, int target);

// Design Z = [X_.j | U_1..U_k] from a precomputed basis. k = 0 yields plain
// univariate regression on the target column. Throws KTooLarge if k exceeds
// basis.rank.
Eigen::MatrixXd build_design(const GenotypeMatrix& x, int target, int k,
                             const SpectralBasis& basis);

struct DesignWithBasis {
  Eigen::MatrixXd z;
  SpectralBasis basis;
};

DesignWithBasis build_design(const GenotypeMatrix& x, Method method,
                             int target, int k);

struct FitResult {
  Method method = Method::cpc;
  int target = 0;
  int k = 0;
  double alpha_hat = 0.0;        // coefficient on the tested column
  Eigen::VectorXd gamma_hat;     // coefficients on the k components
  Eigen::VectorXd residuals;     // y - Z (alpha_hat, gamma_hat)
  double condition_ratio = 0.0;  // of the design Z
};

// Least-squares fit of y on [X_.target | U_1..U_k]. The basis-taking overload
// is the hot path for sweeps over k; the convenience overload decomposes
// internally. Throws NotIdentifiable when Z is numerically rank-deficient
// (e.g. psc with k = rank(X), where the tested column lies in the span of the
// components).
FitResult fit(const GenotypeMatrix& x, const Eigen::VectorXd& y, Method method,
              int target, int k, const SpectralBasis& basis,
              double cond_tol = kDefaultConditionTolerance);
FitResult fit(const GenotypeMatrix& x, const Eigen::VectorXd& y, Method method,
              int target, int k,
              double cond_tol = kDefaultConditionTolerance);

// Component-space truth: the coefficient vector gamma such that the true
// signal of the non-target columns equals U gamma. For the cpc basis
// (U S V^T = X without column j): gamma = S V^T beta_minus_j. For the psc
// basis of the full matrix: gamma = S V^T beta (all columns, target included).
Eigen::VectorXd gamma_truth_cpc(const GenotypeMatrix& x,
                                const Eigen::VectorXd& beta, int target);
Eigen::VectorXd gamma_truth_cpc(const Eigen::VectorXd& beta, int target,
                                const SpectralBasis& basis);
Eigen::VectorXd gamma_truth_psc(const GenotypeMatrix& x,
                                const Eigen::VectorXd& beta);
Eigen::VectorXd gamma_truth_psc(const Eigen::VectorXd& beta,
                                const SpectralBasis& basis);

// Exact conditional moments of alpha_hat given the design, for data generated
// as y = X beta + noise(0, sigma^2 I).
struct TheoreticalMoments {
  Method method = Method::cpc;
  int target = 0;
  int k = 0;
  double expectation = 0.0;     // E(alpha_hat)
  double bias = 0.0;            // expectation - beta_target
  double variance = 0.0;        // sigma^2 / denominator
  double denominator = 0.0;     // x_j^T x_j - ||x_j^T U_1:k||^2
  Eigen::VectorXd corr_coeffs;  // c_s = x_j^T U_s for the k retained components
};

// cpc: E(alpha_hat) = beta_j + x_j^T U_{k+1:r} gamma_{k+1:r} / D with
// gamma = gamma_truth_cpc and D as above; Var = sigma^2 / D.
// psc: E(alpha_hat) = x_j^T U_{k+1:r} gamma_{k+1:r} / D with
// gamma = gamma_truth_psc (bias is that expectation minus beta_j).
// Throws NotIdentifiable when D <= 1e-10 * x_j^T x_j, KTooLarge when k
// exceeds the basis rank.
TheoreticalMoments cpc_moments(const GenotypeMatrix& x,
                               const Eigen::VectorXd& beta, int target, int k,
                               double sigma2);
TheoreticalMoments cpc_moments(const GenotypeMatrix& x,
                               const Eigen::VectorXd& beta, int target, int k,
                               double sigma2, const SpectralBasis& basis);
TheoreticalMoments psc_moments(const GenotypeMatrix& x,
                               const Eigen::VectorXd& beta, int target, int k,
                               double sigma2);
TheoreticalMoments psc_moments(const GenotypeMatrix& x,
                               const Eigen::VectorXd& beta, int target, int k,
                               double sigma2, const SpectralBasis& basis);

// Margin ||x_j^T Ubar_1:k||^2 - ||x_j^T U_1:k||^2 where Ubar is the psc basis
// and U the cpc basis. Non-negative margin means the cpc variance
// sigma^2 / D is no larger than the psc variance at the same k.
double variance_dominance(const GenotypeMatrix& x, int target, int k);
double variance_dominance(const GenotypeMatrix& x, int target, int k,
                          const SpectralBasis& psc_basis,
                          const SpectralBasis& cpc_basis);

// Worst-case cpc bias bound B * sum_{s>k} |c_s| / D for component
// coefficients bounded by |gamma_s| <= B.
double bias_bound_l1(const GenotypeMatrix& x, int target, int k, double bound);
double bias_bound_l1(const GenotypeMatrix& x, int target, int k, double bound,
                     const SpectralBasis& basis);

}  // namespace structcorr
