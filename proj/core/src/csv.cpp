#include "structcorr/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "structcorr/errors.hpp"

namespace structcorr {

namespace {

// Splits one CSV line on commas; no quoting, trailing '\r' stripped.
std::vector<std::string> split_fields(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return s.substr(b, e - b);
}

double parse_cell(const std::string& raw, long row, long col) {
  const std::string cell = trim(raw);
  if (cell.empty()) throw ParseError(row, col);
  double value = 0.0;
  const char* first = cell.data();
  const char* last = first + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) throw ParseError(row, col);
  if (!std::isfinite(value)) throw NonFinite(row, col);
  return value;
}

}  // namespace

Eigen::MatrixXd load_matrix_csv(const std::string& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  long line_index = 0;  // counts data rows only (1-based in errors)
  bool skipped_header = false;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    if (has_header && !skipped_header) {
      skipped_header = true;
      continue;
    }
    // A single trailing empty line is tolerated as an end-of-file artifact.
    if (line.empty() || line == "\r") {
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw ParseError(line_index + 1, 1);
    }
    ++line_index;
    const std::vector<std::string> fields = split_fields(line);
    if (width == 0) {
      width = fields.size();
    } else if (fields.size() != width) {
      throw RaggedRows(line_index, static_cast<long>(width),
                       static_cast<long>(fields.size()));
    }
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      row[c] = parse_cell(fields[c], line_index, static_cast<long>(c) + 1);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("no data rows in file: " + path);

  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];
    }
  }
  return m;
}

Eigen::VectorXd load_vector_csv(const std::string& path, bool has_header) {
  const Eigen::MatrixXd m = load_matrix_csv(path, has_header);
  if (m.cols() != 1) {
    throw DataError("expected a single-column file: " + path);
  }
  return m.col(0);
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[48];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw NumericalFailure("number formatting failed");
  return std::string(buf, ptr);
}

}  // namespace structcorr
