#pragma once

#include <string>

#include <Eigen/Core>

namespace structcorr {

// Strict rectangular numeric CSV reader: comma separators, '.' decimal
// separator, optional single header row, no quoting. Errors carry 1-based
// data-row/column coordinates: ParseError for unparseable cells, RaggedRows
// for inconsistent field counts, NonFinite for NaN/inf cells, DataError for
// unreadable or empty files.
Eigen::MatrixXd load_matrix_csv(const std::string& path, bool has_header);

// Single-column variant (accepts a one-column CSV).
Eigen::VectorXd load_vector_csv(const std::string& path, bool has_header);

// Shortest-round-trip decimal rendering of a double (up to 17 significant
// digits, '.' separator, locale-independent); parsing the result recovers the
// exact bit pattern. NaN renders as "nan", infinities as "inf"/"-inf".
std::string format_double(double value);

}  // namespace structcorr
