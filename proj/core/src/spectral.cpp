#include "structcorr/spectral.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/SVD>

#include "structcorr/errors.hpp"

namespace structcorr {

namespace {

// Row of the largest-magnitude entry; magnitude ties go to the lowest index.
Eigen::Index argmax_abs_row(const Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  double best_abs = std::abs(v[0]);
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  return best;
}

}  // namespace

SpectralBasis thin_svd(const Eigen::MatrixXd& m, double rank_tol_factor) {
  if (m.size() == 0) {
    throw NumericalFailure("cannot decompose an empty matrix");
  }
  if (!m.allFinite()) {
    throw NumericalFailure("cannot decompose a matrix with non-finite entries");
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalFailure("singular value decomposition did not converge");
  }

  const Eigen::VectorXd& sv = svd.singularValues();
  const double s_max = sv.size() > 0 ? sv[0] : 0.0;
  const double tol = rank_tol_factor *
                     static_cast<double>(std::max(m.rows(), m.cols())) * s_max *
                     std::numeric_limits<double>::epsilon();

  int rank = 0;
  while (rank < sv.size() && sv[rank] > tol) ++rank;

  SpectralBasis basis;
  basis.rank = rank;
  basis.left_vectors = svd.matrixU().leftCols(rank);
  basis.singular_values = sv.head(rank);
  basis.right_vectors = svd.matrixV().leftCols(rank);

  // Deterministic orientation: largest-magnitude entry of each left vector
  // made positive, the paired right vector flipped with it.
  std::vector<Eigen::Index> anchor(rank);
  for (int i = 0; i < rank; ++i) {
    anchor[i] = argmax_abs_row(basis.left_vectors.col(i));
    if (basis.left_vectors(anchor[i], i) < 0.0) {
      basis.left_vectors.col(i) = -basis.left_vectors.col(i);
      basis.right_vectors.col(i) = -basis.right_vectors.col(i);
    }
  }

  // Canonical order inside groups of (near-)equal singular values: ascending
  // anchor row of the sign-fixed left vector.
  const double tie_tol = 1e-12 * s_max;
  int lo = 0;
  while (lo < rank) {
    int hi = lo + 1;
    while (hi < rank &&
           basis.singular_values[lo] - basis.singular_values[hi] <= tie_tol) {
      ++hi;
    }
    if (hi - lo > 1) {
      std::vector<int> order(hi - lo);
      std::iota(order.begin(), order.end(), lo);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return anchor[a] < anchor[b]; });
      Eigen::MatrixXd u_group(basis.left_vectors.rows(), hi - lo);
      Eigen::MatrixXd v_group(basis.right_vectors.rows(), hi - lo);
      Eigen::VectorXd s_group(hi - lo);
      for (int i = 0; i < hi - lo; ++i) {
        u_group.col(i) = basis.left_vectors.col(order[i]);
        v_group.col(i) = basis.right_vectors.col(order[i]);
        s_group[i] = basis.singular_values[order[i]];
      }
      basis.left_vectors.middleCols(lo, hi - lo) = u_group;
      basis.right_vectors.middleCols(lo, hi - lo) = v_group;
      basis.singular_values.segment(lo, hi - lo) = s_group;
    }
    lo = hi;
  }

  return basis;
}

Eigen::MatrixXd drop_column(const Eigen::MatrixXd& m, int j) {
  if (j < 0 || j >= m.cols()) {
    throw DimensionMismatch("column index out of range");
  }
  Eigen::MatrixXd out(m.rows(), m.cols() - 1);
  if (j > 0) out.leftCols(j) = m.leftCols(j);
  if (j + 1 < m.cols()) {
    out.rightCols(m.cols() - j - 1) = m.rightCols(m.cols() - j - 1);
  }
  return out;
}

}  // namespace structcorr
