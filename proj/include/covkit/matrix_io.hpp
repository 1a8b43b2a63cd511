#pragma once

#include <string>

#include "covkit/sample_set.hpp"
#include "covkit/sym_matrix.hpp"

namespace covkit {

/// Formats a double with 17 significant digits so the decimal text
/// round-trips to the identical bits.
std::string format_full(double value);

/// Writes a matrix as a `p=<int>` header plus p space-delimited rows
/// at full precision.
void write_matrix_file(const std::string& path, const SymmetricMatrix& a);

/// Reads the format written by write_matrix_file. Returns the raw
/// dense matrix; symmetry is the caller's question to ask.
Eigen::MatrixXd read_dense_matrix_file(const std::string& path);

/// read_dense_matrix_file + symmetry validation (exact by default).
SymmetricMatrix read_matrix_file(const std::string& path, double tol = 0.0);

/// Reads headerless whitespace-delimited numeric text, one observation
/// per row (n rows, p columns each).
SampleSet read_samples_file(const std::string& path);

}  // namespace covkit
