#include "covkit/matcore.hpp"

#include <fmt/format.h>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

namespace covkit {

namespace {
void require_finite(const SymmetricMatrix& a, const char* op) {
  if (!a.all_finite())
    throw InvalidInput(fmt::format("{}: matrix has non-finite entries", op));
}
}  // namespace

Eigen::MatrixXd EigenDecomposition::reconstruct() const {
  return vectors * values.asDiagonal() * vectors.transpose();
}

double operator_norm(const SymmetricMatrix& a) {
  require_finite(a, "operator_norm");
  if (a.dim() == 1) return std::abs(a(0, 0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.dense(),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericFailure("operator_norm: eigenvalue iteration did not converge");
  const auto& ev = solver.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double frobenius_norm(const SymmetricMatrix& a) {
  require_finite(a, "frobenius_norm");
  return a.dense().norm();
}

double l1_matrix_norm(const SymmetricMatrix& a) {
  require_finite(a, "l1_matrix_norm");
  return a.dense().cwiseAbs().colwise().sum().maxCoeff();
}

EigenDecomposition eigendecompose(const SymmetricMatrix& a) {
  require_finite(a, "eigendecompose");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.dense());
  EigenDecomposition out;
  // Eigen sorts ascending; flip to descending.
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  if (solver.info() != Eigen::Success) {
    const double residual = (out.reconstruct() - a.dense()).norm();
    throw NumericFailure(
        fmt::format("eigendecompose: no convergence, residual {}", residual),
        residual);
  }
  return out;
}

SymmetricMatrix psd_project(const SymmetricMatrix& a) {
  require_finite(a, "psd_project");
  EigenDecomposition ed = eigendecompose(a);
  Eigen::VectorXd clipped = ed.values.cwiseMax(0.0);
  Eigen::MatrixXd b = ed.vectors * clipped.asDiagonal() * ed.vectors.transpose();
  // Mirror to kill fp asymmetry from the triple product.
  return SymmetricMatrix::from_dense(b, std::numeric_limits<double>::infinity());
}

namespace {
// Scalar left-looking factorization; used only to identify the failing
// pivot (or to settle borderline cases) when the fast path reports an
// issue. Returns the pivot index that went nonpositive, or -1.
int manual_cholesky(const Eigen::MatrixXd& a, Eigen::MatrixXd& l) {
  const int p = static_cast<int>(a.rows());
  l = Eigen::MatrixXd::Zero(p, p);
  for (int j = 0; j < p; ++j) {
    double d = a(j, j) - l.row(j).head(j).squaredNorm();
    if (!(d > 0.0)) return j;
    const double root = std::sqrt(d);
    l(j, j) = root;
    for (int i = j + 1; i < p; ++i)
      l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / root;
  }
  return -1;
}
}  // namespace

Eigen::MatrixXd cholesky(const SymmetricMatrix& a) {
  require_finite(a, "cholesky");
  Eigen::LLT<Eigen::MatrixXd> llt(a.dense());
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::MatrixXd l;
  const int pivot = manual_cholesky(a.dense(), l);
  if (pivot >= 0)
    throw NotPositiveDefinite(
        fmt::format("cholesky: nonpositive pivot at index {}", pivot), pivot);
  return l;
}

}  // namespace covkit
