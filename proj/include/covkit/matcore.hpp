#pragma once

#include <Eigen/Core>

#include "covkit/sym_matrix.hpp"

namespace covkit {

/// Eigendecomposition of a symmetric matrix. Eigenvalues are sorted
/// descending; eigenvector k (unit length) is column k of `vectors`.
struct EigenDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;

  /// V diag(values) V^T.
  Eigen::MatrixXd reconstruct() const;
};

/// Spectral norm: largest absolute eigenvalue.
double operator_norm(const SymmetricMatrix& a);

/// Entrywise l2 norm.
double frobenius_norm(const SymmetricMatrix& a);

/// Maximum absolute column sum. Equals the maximum absolute row sum
/// for symmetric input.
double l1_matrix_norm(const SymmetricMatrix& a);

EigenDecomposition eigendecompose(const SymmetricMatrix& a);

/// Nearest positive-semidefinite matrix in Frobenius distance:
/// eigenvalues below zero are clipped to zero. Idempotent.
SymmetricMatrix psd_project(const SymmetricMatrix& a);

/// Lower-triangular Cholesky factor L with A = L L^T. Requires A
/// positive definite; otherwise NotPositiveDefinite reports the
/// failing pivot index.
Eigen::MatrixXd cholesky(const SymmetricMatrix& a);

}  // namespace covkit
