#include "structcorr/least_squares.hpp"

#include <Eigen/SVD>

#include "structcorr/errors.hpp"

namespace structcorr {

LeastSquares solve_least_squares(const Eigen::MatrixXd& z,
                                 const Eigen::VectorXd& y, double cond_tol) {
  if (z.rows() != y.size()) {
    throw DimensionMismatch("design and response have different row counts");
  }
  if (z.rows() <= z.cols()) {
    throw DimensionMismatch("design must have more rows than columns");
  }
  if (!z.allFinite() || !y.allFinite()) {
    throw NumericalFailure("least-squares input contains non-finite values");
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(z, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalFailure("least-squares factorization did not converge");
  }
  const Eigen::VectorXd& sv = svd.singularValues();
  const double s_max = sv[0];
  const double s_min = sv[sv.size() - 1];
  const double ratio = s_max > 0.0 ? s_min / s_max : 0.0;
  if (ratio < cond_tol) {
    throw NotIdentifiable(ratio);
  }

  LeastSquares out;
  out.condition_ratio = ratio;
  // Full-rank thin SVD solve: c = V diag(1/s) U^T y.
  const Eigen::VectorXd uty = svd.matrixU().transpose() * y;
  out.coefficients = svd.matrixV() * uty.cwiseQuotient(sv);
  return out;
}

}  // namespace structcorr
