#pragma once

#include <Eigen/Core>

namespace structcorr {

// An n x p covariate matrix. When `standardized` is set, every column has
// mean 0 and unit Euclidean norm (each within 1e-10); `column_scales` then
// holds the Euclidean norms the centered raw columns had before scaling, so
// coefficients fitted on the standardized columns can be mapped back to the
// units of the raw data (beta_raw = beta_standardized / scale).
struct GenotypeMatrix {
  Eigen::MatrixXd values;
  Eigen::VectorXd column_scales;
  bool standardized = false;

  Eigen::Index n() const { return values.rows(); }
  Eigen::Index p() const { return values.cols(); }
};

// Center each column to mean 0 and scale it to unit Euclidean norm.
// Idempotent within 1e-12. Throws ConstantColumn if any centered column has
// norm below 1e-12, DimensionMismatch if raw is smaller than 2 x 2.
GenotypeMatrix center_normalize(const Eigen::MatrixXd& raw);

// Column inner-product (correlation-like) matrix X^T X of a standardized
// matrix: p x p, symmetric, unit diagonal, entries in [-1, 1].
Eigen::MatrixXd kinship(const GenotypeMatrix& x);

}  // namespace structcorr
