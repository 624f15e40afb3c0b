#pragma once

#include <Eigen/Core>

namespace structcorr {

// Default threshold on the smallest-to-largest singular-value ratio below
// which a design is treated as not identifiable.
inline constexpr double kDefaultConditionTolerance = 1e-10;

struct LeastSquares {
  Eigen::VectorXd coefficients;
  // Smallest singular value of the design divided by the largest.
  double condition_ratio = 0.0;
};

// Minimize ||y - Z c||_2 through one orthogonal factorization (thin SVD) of
// Z; the same factorization supplies the conditioning diagnostic. The
// normal-equations matrix (Z^T Z)^{-1} is never formed. Requires more rows
// than columns (DimensionMismatch otherwise) and throws NotIdentifiable when
// the condition ratio falls below cond_tol.
LeastSquares solve_least_squares(const Eigen::MatrixXd& z,
                                 const Eigen::VectorXd& y,
                                 double cond_tol = kDefaultConditionTolerance);

}  // namespace structcorr
