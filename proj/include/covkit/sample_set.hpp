#pragma once

#include <Eigen/Core>

#include "covkit/errors.hpp"

namespace covkit {

/// Immutable batch of n observations of dimension p. Stored
/// column-major as a p x n matrix so each observation is contiguous:
/// observation l is column l.
class SampleSet {
 public:
  /// `data` is p x n, one observation per column. Requires n >= 2 (so
  /// centered moments exist), p >= 1, and finite entries.
  explicit SampleSet(Eigen::MatrixXd data);

  int n() const { return static_cast<int>(data_.cols()); }
  int p() const { return static_cast<int>(data_.rows()); }

  /// p x n matrix, observation l in column l.
  const Eigen::MatrixXd& observations() const { return data_; }

  /// Per-coordinate sample mean (length p).
  Eigen::VectorXd mean() const { return data_.rowwise().mean(); }

 private:
  Eigen::MatrixXd data_;
};

}  // namespace covkit
