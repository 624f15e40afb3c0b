#include "structcorr/estimators.hpp"

#include "structcorr/errors.hpp"

namespace structcorr {

namespace {

void require_standardized(const GenotypeMatrix& x) {
  if (!x.standardized) {
    throw DataError("estimators require a standardized matrix");
  }
}

void require_target(const GenotypeMatrix& x, int target) {
  if (target < 0 || target >= x.p()) {
    throw DimensionMismatch("target column index out of range");
  }
}

// Shared tail-projection expectation: x_j^T U_{k+1:r} gamma_{k+1:r} / D with
// D = x_j^T x_j - ||x_j^T U_1:k||^2. Returns (numerator/D, D, c_1..c_k).
struct TailProjection {
  double ratio = 0.0;
  double denominator = 0.0;
  Eigen::VectorXd corr_head;
};

TailProjection tail_projection(const Eigen::VectorXd& x_col,
                               const Eigen::VectorXd& gamma, int k,
                               const SpectralBasis& basis) {
  if (k < 0 || k > basis.rank) {
    throw KTooLarge(k, basis.rank);
  }
  const Eigen::VectorXd c = basis.left_vectors.transpose() * x_col;
  const double x_sq = x_col.squaredNorm();
  const double d = x_sq - c.head(k).squaredNorm();
  if (d <= 1e-10 * x_sq) {
    throw NotIdentifiable(d);
  }
  TailProjection out;
  out.denominator = d;
  out.corr_head = c.head(k);
  out.ratio = c.tail(basis.rank - k).dot(gamma.tail(basis.rank - k)) / d;
  return out;
}

}  // namespace

std::string to_string(Method m) { return m == Method::psc ? "psc" : "cpc"; }

SpectralBasis method_basis(const GenotypeMatrix& x, Method method, int target) {
  require_standardized(x);
  require_target(x, target);
  if (method == Method::psc) {
    return thin_svd(x.values);
  }
  return thin_svd(drop_column(x.values, target));
}

Eigen::MatrixXd build_design(const GenotypeMatrix& x, int target, int k,
                             const SpectralBasis& basis) {
  require_standardized(x);
  require_target(x, target);
  if (k < 0 || k > basis.rank) {
    throw KTooLarge(k, basis.rank);
  }
  Eigen::MatrixXd z(x.n(), k + 1);
  z.col(0) = x.values.col(target);
  if (k > 0) {
    z.rightCols(k) = basis.left_vectors.leftCols(k);
  }
  return z;
}

DesignWithBasis build_design(const GenotypeMatrix& x, Method method,
                             int target, int k) {
  DesignWithBasis out;
  out.basis = method_basis(x, method, target);
  out.z = build_design(x, target, k, out.basis);
  return out;
}

FitResult fit(const GenotypeMatrix& x, const Eigen::VectorXd& y, Method method,
              int target, int k, const SpectralBasis& basis, double cond_tol) {
  if (y.size() != x.n()) {
    throw DimensionMismatch("response length does not match matrix rows");
  }
  const Eigen::MatrixXd z = build_design(x, target, k, basis);
  const LeastSquares ls = solve_least_squares(z, y, cond_tol);

  FitResult out;
  out.method = method;
  out.target = target;
  out.k = k;
  out.alpha_hat = ls.coefficients[0];
  out.gamma_hat = ls.coefficients.tail(k);
  out.residuals = y - z * ls.coefficients;
  out.condition_ratio = ls.condition_ratio;
  return out;
}

FitResult fit(const GenotypeMatrix& x, const Eigen::VectorXd& y, Method method,
              int target, int k, double cond_tol) {
  return fit(x, y, method, target, k, method_basis(x, method, target),
             cond_tol);
}

Eigen::VectorXd gamma_truth_cpc(const Eigen::VectorXd& beta, int target,
                                const SpectralBasis& basis) {
  if (target < 0 || target >= beta.size()) {
    throw DimensionMismatch("target column index out of range");
  }
  Eigen::VectorXd beta_rest(beta.size() - 1);
  beta_rest.head(target) = beta.head(target);
  beta_rest.tail(beta.size() - target - 1) = beta.tail(beta.size() - target - 1);
  if (basis.right_vectors.rows() != beta_rest.size()) {
    throw DimensionMismatch("basis does not match the reduced coefficient size");
  }
  return basis.singular_values.asDiagonal() *
         (basis.right_vectors.transpose() * beta_rest);
}

Eigen::VectorXd gamma_truth_cpc(const GenotypeMatrix& x,
                                const Eigen::VectorXd& beta, int target) {
  require_standardized(x);
  require_target(x, target);
  return gamma_truth_cpc(beta, target, method_basis(x, Method::cpc, target));
}

Eigen::VectorXd gamma_truth_psc(const Eigen::VectorXd& beta,
                                const SpectralBasis& basis) {
  if (basis.right_vectors.rows() != beta.size()) {
    throw DimensionMismatch("basis does not match the coefficient size");
  }
  return basis.singular_values.asDiagonal() *
         (basis.right_vectors.transpose() * beta);
}

Eigen::VectorXd gamma_truth_psc(const GenotypeMatrix& x,
                                const Eigen::VectorXd& beta) {
  require_standardized(x);
  return gamma_truth_psc(beta, thin_svd(x.values));
}

TheoreticalMoments cpc_moments(const GenotypeMatrix& x,
                               const Eigen::VectorXd& beta, int target, int k,
                               double sigma2, const SpectralBasis& basis) {
  require_standardized(x);
  require_target(x, target);
  if (beta.size() != x.p()) {
    throw DimensionMismatch("coefficient length does not match column count");
  }
  const Eigen::VectorXd gamma = gamma_truth_cpc(beta, target, basis);
  const TailProjection tp =
      tail_projection(x.values.col(target), gamma, k, basis);

  TheoreticalMoments out;
  out.method = Method::cpc;
  out.target = target;
  out.k = k;
  out.bias = tp.ratio;
  out.expectation = beta[target] + tp.ratio;
  out.variance = sigma2 / tp.denominator;
  out.denominator = tp.denominator;
  out.corr_coeffs = tp.corr_head;
  return out;
}

TheoreticalMoments cpc_moments(const GenotypeMatrix& x,
                               const Eigen::VectorXd& beta, int target, int k,
                               double sigma2) {
  return cpc_moments(x, beta, target, k, sigma2,
                     method_basis(x, Method::cpc, target));
}

TheoreticalMoments psc_moments(const GenotypeMatrix& x,
                               const Eigen::VectorXd& beta, int target, int k,
                               double sigma2, const SpectralBasis& basis) {
  require_standardized(x);
  require_target(x, target);
  if (beta.size() != x.p()) {
    throw DimensionMismatch("coefficient length does not match column count");
  }
  const Eigen::VectorXd gamma = gamma_truth_psc(beta, basis);
  const TailProjection tp =
      tail_projection(x.values.col(target), gamma, k, basis);

  TheoreticalMoments out;
  out.method = Method::psc;
  out.target = target;
  out.k = k;
  // The tested column participates in its own correction here, so the tail
  // projection IS the expectation; the bias is whatever is left after
  // removing the true coefficient.
  out.expectation = tp.ratio;
  out.bias = tp.ratio - beta[target];
  out.variance = sigma2 / tp.denominator;
  out.denominator = tp.denominator;
  out.corr_coeffs = tp.corr_head;
  return out;
}

TheoreticalMoments psc_moments(const GenotypeMatrix& x,
                               const Eigen::VectorXd& beta, int target, int k,
                               double sigma2) {
  return psc_moments(x, beta, target, k, sigma2,
                     method_basis(x, Method::psc, target));
}

double variance_dominance(const GenotypeMatrix& x, int target, int k,
                          const SpectralBasis& psc_basis,
                          const SpectralBasis& cpc_basis) {
  require_standardized(x);
  require_target(x, target);
  if (k < 0 || k > psc_basis.rank || k > cpc_basis.rank) {
    throw KTooLarge(k, std::min(psc_basis.rank, cpc_basis.rank));
  }
  const Eigen::VectorXd& x_col = x.values.col(target);
  const double psc_norm =
      (psc_basis.left_vectors.leftCols(k).transpose() * x_col).squaredNorm();
  const double cpc_norm =
      (cpc_basis.left_vectors.leftCols(k).transpose() * x_col).squaredNorm();
  return psc_norm - cpc_norm;
}

double variance_dominance(const GenotypeMatrix& x, int target, int k) {
  return variance_dominance(x, target, k, method_basis(x, Method::psc, target),
                            method_basis(x, Method::cpc, target));
}

double bias_bound_l1(const GenotypeMatrix& x, int target, int k, double bound,
                     const SpectralBasis& basis) {
  require_standardized(x);
  require_target(x, target);
  if (k < 0 || k > basis.rank) {
    throw KTooLarge(k, basis.rank);
  }
  if (bound < 0.0) {
    throw ConfigError("component coefficient bound must be non-negative");
  }
  const Eigen::VectorXd c = basis.left_vectors.transpose() * x.values.col(target);
  const double x_sq = x.values.col(target).squaredNorm();
  const double d = x_sq - c.head(k).squaredNorm();
  if (d <= 1e-10 * x_sq) {
    throw NotIdentifiable(d);
  }
  return bound * c.tail(basis.rank - k).cwiseAbs().sum() / d;
}

double bias_bound_l1(const GenotypeMatrix& x, int target, int k, double bound) {
  return bias_bound_l1(x, target, k, bound,
                       method_basis(x, Method::cpc, target));
}

}  // namespace structcorr
