#include "structcorr/genotype.hpp"

#include "structcorr/errors.hpp"

namespace structcorr {

GenotypeMatrix center_normalize(const Eigen::MatrixXd& raw) {
  if (raw.rows() < 2 || raw.cols() < 2) {
    throw DimensionMismatch("matrix must have at least 2 rows and 2 columns");
  }
  GenotypeMatrix out;
  out.values = raw;
  out.column_scales.resize(raw.cols());
  for (Eigen::Index j = 0; j < raw.cols(); ++j) {
    auto col = out.values.col(j);
    col.array() -= col.mean();
    const double norm = col.norm();
    if (norm < 1e-12) {
      throw ConstantColumn(static_cast<int>(j));
    }
    col /= norm;
    out.column_scales[j] = norm;
  }
  out.standardized = true;
  return out;
}

Eigen::MatrixXd kinship(const GenotypeMatrix& x) {
  if (!x.standardized) {
    throw DataError("kinship requires a standardized matrix");
  }
  return x.values.transpose() * x.values;
}

}  // namespace structcorr
