#pragma once

#include <Eigen/Core>

#include "covkit/errors.hpp"

namespace covkit {

/// Largest accepted matrix dimension. Guards against accidental
/// memory blowups from malformed configs; adjustable at startup.
int max_dim();
void set_max_dim(int value);

/// Dense real symmetric matrix. Symmetry holds by construction: every
/// write lands in both triangles, so (i,j) and (j,i) always read the
/// identical value. Dimension is fixed at construction and >= 1.
class SymmetricMatrix {
 public:
  /// Zero matrix of the given dimension.
  explicit SymmetricMatrix(int dim);

  /// Wraps a dense matrix. Requires max |a_ij - a_ji| <= tol; within
  /// tolerance the two triangles are averaged, which is exact when
  /// they already agree.
  static SymmetricMatrix from_dense(const Eigen::MatrixXd& a, double tol = 0.0);

  static SymmetricMatrix identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }

  double operator()(int i, int j) const { return m_(i, j); }

  void set(int i, int j, double value) {
    m_(i, j) = value;
    m_(j, i) = value;
  }

  const Eigen::MatrixXd& dense() const { return m_; }

  bool all_finite() const { return m_.allFinite(); }

  SymmetricMatrix operator+(const SymmetricMatrix& other) const;
  SymmetricMatrix operator-(const SymmetricMatrix& other) const;
  SymmetricMatrix scaled(double factor) const;

 private:
  struct Unchecked {};
  SymmetricMatrix(Eigen::MatrixXd m, Unchecked) : m_(std::move(m)) {}

  Eigen::MatrixXd m_;
};

}  // namespace covkit
