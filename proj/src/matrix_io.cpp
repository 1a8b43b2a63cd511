#include "covkit/matrix_io.hpp"

#include <fmt/format.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace covkit {

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_matrix_file(const std::string& path, const SymmetricMatrix& a) {
  std::ofstream out(path);
  if (!out) throw InvalidInput(fmt::format("cannot open '{}' for writing", path));
  const int p = a.dim();
  out << "p=" << p << "\n";
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (j) out << ' ';
      out << format_full(a(i, j));
    }
    out << "\n";
  }
  if (!out) throw InvalidInput(fmt::format("write to '{}' failed", path));
}

namespace {

std::vector<double> parse_row(const std::string& text, long line_number) {
  std::vector<double> values;
  const char* cursor = text.c_str();
  while (*cursor) {
    char* end = nullptr;
    const double value = std::strtod(cursor, &end);
    if (end == cursor) {
      // Skip whitespace; anything else is malformed.
      if (*cursor == ' ' || *cursor == '\t' || *cursor == '\r') {
        ++cursor;
        continue;
      }
      throw ParseError(
          fmt::format("line {}: unexpected token starting at '{}'", line_number,
                      std::string(cursor).substr(0, 12)),
          line_number);
    }
    values.push_back(value);
    cursor = end;
  }
  return values;
}

}  // namespace

Eigen::MatrixXd read_dense_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(fmt::format("cannot open '{}' for reading", path));
  std::string line;
  long line_number = 0;

  if (!std::getline(in, line)) throw ParseError("empty matrix file", 1);
  ++line_number;
  int p = 0;
  if (std::sscanf(line.c_str(), "p=%d", &p) != 1 || p < 1)
    throw ParseError(
        fmt::format("line 1: expected header 'p=<positive int>', got '{}'", line),
        1);

  Eigen::MatrixXd m(p, p);
  for (int i = 0; i < p; ++i) {
    if (!std::getline(in, line))
      throw ParseError(fmt::format("line {}: expected {} rows, file ended at row {}",
                                   line_number + 1, p, i),
                       line_number + 1);
    ++line_number;
    const std::vector<double> row = parse_row(line, line_number);
    if (static_cast<int>(row.size()) != p)
      throw ParseError(fmt::format("line {}: expected {} values, got {}",
                                   line_number, p, row.size()),
                       line_number);
    for (int j = 0; j < p; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

SymmetricMatrix read_matrix_file(const std::string& path, double tol) {
  return SymmetricMatrix::from_dense(read_dense_matrix_file(path), tol);
}

SampleSet read_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(fmt::format("cannot open '{}' for reading", path));
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::vector<double> row = parse_row(line, line_number);
    if (row.empty()) continue;  // blank line
    if (!rows.empty() && rows.front().size() != row.size())
      throw ParseError(fmt::format("line {}: expected {} columns, got {}",
                                   line_number, rows.front().size(), row.size()),
                       line_number);
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2)
    throw InvalidInput(
        fmt::format("need at least 2 observations, got {}", rows.size()));

  const int n = static_cast<int>(rows.size());
  const int p = static_cast<int>(rows.front().size());
  Eigen::MatrixXd data(p, n);  // observation per column
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < p; ++i)
      data(i, l) = rows[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)];
  return SampleSet(std::move(data));
}

}  // namespace covkit
