#pragma once

#include <Eigen/Core>

namespace structcorr {

// Thin singular value decomposition M = U diag(s) V^T truncated at the
// numerical rank r. left_vectors is n x r with orthonormal columns,
// singular_values is length r, positive and non-increasing, right_vectors is
// q x r with orthonormal columns.
struct SpectralBasis {
  Eigen::MatrixXd left_vectors;
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd right_vectors;
  int rank = 0;
};

// Thin SVD with a deterministic orientation so identical input yields
// bit-identical output:
//  - rank r = number of singular values strictly above
//    rank_tol_factor * max(n, q) * s_max * machine_epsilon;
//  - each left singular vector is sign-fixed so its largest-magnitude entry
//    is positive (magnitude ties broken by lowest row index), with the
//    matching right vector flipped alongside;
//  - groups of singular values equal within a relative 1e-12 are ordered by
//    the row index of the sign-fixed left vector's largest-magnitude entry.
// Throws NumericalFailure on non-finite input or decomposition failure.
SpectralBasis thin_svd(const Eigen::MatrixXd& m, double rank_tol_factor = 1.0);

// Copy of m with 0-based column j removed.
Eigen::MatrixXd drop_column(const Eigen::MatrixXd& m, int j);

}  // namespace structcorr
