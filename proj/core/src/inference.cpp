#include "structcorr/inference.hpp"

#include <cmath>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "structcorr/errors.hpp"
#include "structcorr/estimators.hpp"

namespace structcorr {

double normal_quantile(double p) {
  boost::math::normal_distribution<double> dist(0.0, 1.0);
  return boost::math::quantile(dist, p);
}

double student_quantile(double p, int dof) {
  if (dof < 1) {
    throw InsufficientDof(dof + 1, 0);
  }
  boost::math::students_t_distribution<double> dist(static_cast<double>(dof));
  return boost::math::quantile(dist, p);
}

NdPair compute_nd(const GenotypeMatrix& x, int target, int k,
                  double gamma_tail_l1, const SpectralBasis& cpc_basis) {
  if (!x.standardized) {
    throw DataError("compute_nd requires a standardized matrix");
  }
  if (target < 0 || target >= x.p()) {
    throw DimensionMismatch("target column index out of range");
  }
  if (k < 0 || k > cpc_basis.rank) {
    throw KTooLarge(k, cpc_basis.rank);
  }
  if (gamma_tail_l1 < 0.0) {
    throw ConfigError("gamma tail bound must be non-negative");
  }
  const Eigen::VectorXd head =
      cpc_basis.left_vectors.leftCols(k).transpose() * x.values.col(target);
  NdPair out;
  out.n = gamma_tail_l1;
  out.d = std::abs(1.0 - head.squaredNorm());
  if (out.d < 1e-10) {
    throw DegenerateD(out.d);
  }
  return out;
}

NdPair compute_nd(const GenotypeMatrix& x, int target, int k,
                  double gamma_tail_l1) {
  return compute_nd(x, target, k, gamma_tail_l1,
                    method_basis(x, Method::cpc, target));
}

TestOutcome test_h0(double alpha_hat, double n_bound, double d, double sigma,
                    bool sigma_estimated, long n, double level,
                    DofConvention convention, int k) {
  if (!(level > 0.0) || !(level < 1.0)) {
    throw InvalidLevel(level);
  }
  if (d <= 0.0) {
    throw DegenerateD(d);
  }
  if (n_bound < 0.0) {
    throw ConfigError("bias bound N must be non-negative");
  }
  if (sigma <= 0.0) {
    throw ConfigError("noise scale sigma must be positive");
  }

  TestOutcome out;
  out.alpha_hat = alpha_hat;
  out.n_bound = n_bound;
  out.d = d;
  out.sigma = sigma;
  out.sigma_estimated = sigma_estimated;
  out.level = level;

  if (sigma_estimated) {
    const long dof = convention == DofConvention::n_minus_1
                         ? n - 1
                         : n - static_cast<long>(k) - 1;
    if (dof < 1) {
      throw InsufficientDof(n, convention == DofConvention::n_minus_1 ? 0 : k);
    }
    out.dof = static_cast<int>(dof);
    out.quantile = student_quantile(1.0 - level / 2.0, out.dof);
  } else {
    out.dof = 0;
    out.quantile = normal_quantile(1.0 - level / 2.0);
  }

  const double half_width = n_bound / d + out.quantile * std::sqrt(sigma * sigma / d);
  out.lower = -half_width;
  out.upper = half_width;
  out.reject = alpha_hat < out.lower || alpha_hat > out.upper;
  return out;
}

double estimate_sigma(const Eigen::VectorXd& residuals, int k) {
  const long dof = residuals.size() - static_cast<long>(k) - 1;
  if (dof < 1) {
    throw InsufficientDof(residuals.size(), k);
  }
  return std::sqrt(residuals.squaredNorm() / static_cast<double>(dof));
}

}  // namespace structcorr
