#include "covkit/sym_matrix.hpp"

#include <fmt/format.h>

#include <atomic>
#include <cmath>
#include <utility>

namespace covkit {

namespace {
std::atomic<int> g_max_dim{4000};

void check_dim(int dim) {
  if (dim < 1) throw InvalidInput("matrix dimension must be >= 1");
  if (dim > g_max_dim.load())
    throw InvalidInput(
        fmt::format("matrix dimension {} exceeds cap {}", dim, g_max_dim.load()));
}
}  // namespace

int max_dim() { return g_max_dim.load(); }

void set_max_dim(int value) {
  if (value < 1) throw InvalidInput("max_dim must be >= 1");
  g_max_dim.store(value);
}

SymmetricMatrix::SymmetricMatrix(int dim) {
  check_dim(dim);
  m_ = Eigen::MatrixXd::Zero(dim, dim);
}

SymmetricMatrix SymmetricMatrix::from_dense(const Eigen::MatrixXd& a, double tol) {
  if (a.rows() != a.cols())
    throw InvalidInput(
        fmt::format("matrix is {}x{}, expected square", a.rows(), a.cols()));
  check_dim(static_cast<int>(a.rows()));
  if (!a.allFinite())
    throw InvalidInput("matrix has non-finite entries");
  const int p = static_cast<int>(a.rows());
  for (int j = 0; j < p; ++j)
    for (int i = j + 1; i < p; ++i) {
      const double gap = a(i, j) - a(j, i);
      if (std::isnan(gap) || std::abs(gap) > tol)
        throw InvalidInput(fmt::format("matrix not symmetric at ({},{}): {} vs {}",
                                       i, j, a(i, j), a(j, i)));
    }
  Eigen::MatrixXd m = 0.5 * (a + a.transpose());
  return SymmetricMatrix(std::move(m), Unchecked{});
}

SymmetricMatrix SymmetricMatrix::identity(int dim) {
  check_dim(dim);
  return SymmetricMatrix(Eigen::MatrixXd::Identity(dim, dim), Unchecked{});
}

namespace {
void check_same_dim(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.dim() != b.dim())
    throw InvalidInput(fmt::format("dimension mismatch: {} vs {}", a.dim(), b.dim()));
}
}  // namespace

SymmetricMatrix SymmetricMatrix::operator+(const SymmetricMatrix& other) const {
  check_same_dim(*this, other);
  return SymmetricMatrix(m_ + other.m_, Unchecked{});
}

SymmetricMatrix SymmetricMatrix::operator-(const SymmetricMatrix& other) const {
  check_same_dim(*this, other);
  return SymmetricMatrix(m_ - other.m_, Unchecked{});
}

SymmetricMatrix SymmetricMatrix::scaled(double factor) const {
  return SymmetricMatrix(factor * m_, Unchecked{});
}

}  // namespace covkit
