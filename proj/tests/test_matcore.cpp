#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

#include "covkit/errors.hpp"
#include "covkit/matcore.hpp"
#include "covkit/models.hpp"
#include "covkit/sym_matrix.hpp"

using covkit::SymmetricMatrix;

namespace {

SymmetricMatrix two_one() {
  SymmetricMatrix a(2);
  a.set(0, 0, 2.0);
  a.set(1, 1, 2.0);
  a.set(0, 1, 1.0);
  return a;
}

SymmetricMatrix random_symmetric(int dim, std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  SymmetricMatrix a(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) a.set(i, j, gauss(rng));
  return a;
}

SymmetricMatrix random_gram(int dim, std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd b(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) b(i, j) = gauss(rng);
  return SymmetricMatrix::from_dense(b * b.transpose(), 1e-12);
}

// Independent spectral-norm oracle: power iteration on A*A, which is
// PSD with top eigenvalue sigma_max^2. Several starts guard against an
// unlucky orthogonal initialization.
double power_iteration_opnorm(const SymmetricMatrix& a) {
  const Eigen::MatrixXd& m = a.dense();
  const Eigen::MatrixXd b = m * m;
  const int dim = a.dim();
  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss;
  double best = 0.0;
  for (int start = 0; start < 4; ++start) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = gauss(rng);
    v.normalize();
    double prev = 0.0;
    for (int it = 0; it < 200000; ++it) {
      Eigen::VectorXd w = b * v;
      const double norm = w.norm();
      if (norm == 0.0) break;
      v = w / norm;
      const double rayleigh = v.dot(b * v);
      if (it > 3 && std::abs(rayleigh - prev) <= 1e-15 * std::max(1.0, rayleigh))
        break;
      prev = rayleigh;
    }
    best = std::max(best, std::sqrt(std::max(0.0, v.dot(b * v))));
  }
  return best;
}

}  // namespace

TEST_CASE("operator norm on closed-form inputs") {
  CHECK(covkit::operator_norm(SymmetricMatrix::identity(7)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(covkit::operator_norm(two_one()) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("operator norm matches a power-iteration oracle") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const SymmetricMatrix a = random_symmetric(6, rng);
    const double oracle = power_iteration_opnorm(a);
    CHECK(covkit::operator_norm(a) == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("frobenius norm on closed-form inputs") {
  CHECK(covkit::frobenius_norm(SymmetricMatrix(4)) == 0.0);
  CHECK(covkit::frobenius_norm(SymmetricMatrix::identity(9)) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(covkit::frobenius_norm(two_one()) ==
        doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));
}

TEST_CASE("l1 matrix norm equals the worst absolute column sum") {
  CHECK(covkit::l1_matrix_norm(SymmetricMatrix::identity(5)) == doctest::Approx(1.0));
  CHECK(covkit::l1_matrix_norm(two_one()) == doctest::Approx(3.0));

  const SymmetricMatrix t = covkit::toeplitz_decay_matrix(5, 0.1, 0.6);
  double worst = 0.0;
  for (int j = 0; j < 5; ++j) {
    double sum = 0.0;
    for (int i = 0; i < 5; ++i) sum += std::abs(t(i, j));
    worst = std::max(worst, sum);
  }
  CHECK(covkit::l1_matrix_norm(t) == doctest::Approx(worst).epsilon(1e-14));
}

TEST_CASE("eigendecompose orders values and returns unit eigenvectors") {
  SymmetricMatrix d(2);
  d.set(0, 0, 3.0);
  d.set(1, 1, 1.0);
  const covkit::EigenDecomposition ed = covkit::eigendecompose(d);
  CHECK(ed.values(0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(ed.values(1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(ed.vectors(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(ed.vectors(1, 1)) == doctest::Approx(1.0).epsilon(1e-12));

  const covkit::EigenDecomposition ed2 = covkit::eigendecompose(two_one());
  CHECK(ed2.values(0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(ed2.values(1) == doctest::Approx(1.0).epsilon(1e-14));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::Vector2d v0(inv_sqrt2, inv_sqrt2), v1(inv_sqrt2, -inv_sqrt2);
  CHECK(std::abs(ed2.vectors.col(0).dot(v0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(ed2.vectors.col(1).dot(v1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigendecompose reconstructs a random Gram matrix") {
  std::mt19937 rng(7);
  const SymmetricMatrix a = random_gram(8, rng);
  const covkit::EigenDecomposition ed = covkit::eigendecompose(a);
  CHECK((ed.reconstruct() - a.dense()).cwiseAbs().maxCoeff() <= 1e-10);
  for (int i = 0; i + 1 < 8; ++i) CHECK(ed.values(i) >= ed.values(i + 1));
  const Eigen::MatrixXd vtv = ed.vectors.transpose() * ed.vectors;
  CHECK((vtv - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("psd projection clips negative eigenvalues") {
  const SymmetricMatrix eye = SymmetricMatrix::identity(6);
  CHECK((covkit::psd_project(eye).dense() - eye.dense()).cwiseAbs().maxCoeff() <=
        1e-14);

  SymmetricMatrix d(2);
  d.set(0, 0, 1.0);
  d.set(1, 1, -1.0);
  const SymmetricMatrix pd = covkit::psd_project(d);
  CHECK(pd(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pd(1, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  SymmetricMatrix flip(2);
  flip.set(0, 1, 1.0);
  const SymmetricMatrix pf = covkit::psd_project(flip);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(pf(i, j) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("psd projection is idempotent and PSD on random input") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const SymmetricMatrix a = random_symmetric(9, rng);
    const SymmetricMatrix proj = covkit::psd_project(a);
    const covkit::EigenDecomposition ed = covkit::eigendecompose(proj);
    CHECK(ed.values(8) >= -1e-10 * std::max(1.0, ed.values(0)));
    const SymmetricMatrix again = covkit::psd_project(proj);
    CHECK((again.dense() - proj.dense()).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("cholesky on closed-form inputs") {
  const Eigen::MatrixXd li = covkit::cholesky(SymmetricMatrix::identity(3));
  CHECK((li - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-14);

  SymmetricMatrix d(2);
  d.set(0, 0, 4.0);
  d.set(1, 1, 9.0);
  const Eigen::MatrixXd ld = covkit::cholesky(d);
  CHECK(ld(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ld(1, 1) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(ld(1, 0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  const Eigen::MatrixXd l = covkit::cholesky(two_one());
  CHECK(l(0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(l(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(l(1, 1) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
  CHECK(l(0, 1) == 0.0);
}

TEST_CASE("cholesky factors reproduce a random Gram matrix") {
  std::mt19937 rng(31);
  const SymmetricMatrix a = random_gram(10, rng);
  const Eigen::MatrixXd l = covkit::cholesky(a);
  CHECK((l * l.transpose() - a.dense()).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("cholesky reports the failing pivot") {
  SymmetricMatrix neg(3);
  neg.set(0, 0, -1.0);
  neg.set(1, 1, 1.0);
  neg.set(2, 2, 1.0);
  CHECK_THROWS_AS(covkit::cholesky(neg), covkit::NotPositiveDefinite);
  try {
    covkit::cholesky(neg);
  } catch (const covkit::NotPositiveDefinite& err) {
    CHECK(err.pivot == 0);
  }

  // [[1,2],[2,1]] passes pivot 0 and fails at pivot 1 (Schur complement
  // 1 - 4 < 0).
  SymmetricMatrix indef(2);
  indef.set(0, 0, 1.0);
  indef.set(1, 1, 1.0);
  indef.set(0, 1, 2.0);
  try {
    covkit::cholesky(indef);
    CHECK(false);
  } catch (const covkit::NotPositiveDefinite& err) {
    CHECK(err.pivot == 1);
  }
}

TEST_CASE("operator norm never exceeds frobenius or l1 norms") {
  std::mt19937 rng(55);
  std::uniform_int_distribution<int> dim_pick(1, 12);
  for (int trial = 0; trial < 100; ++trial) {
    const SymmetricMatrix a = random_symmetric(dim_pick(rng), rng);
    const double op = covkit::operator_norm(a);
    CHECK(op <= covkit::frobenius_norm(a) + 1e-12);
    CHECK(op <= covkit::l1_matrix_norm(a) + 1e-12);
  }
}

TEST_CASE("non-finite entries are rejected") {
  SymmetricMatrix a(2);
  a.set(0, 1, std::numeric_limits<double>::quiet_NaN());
  CHECK_FALSE(a.all_finite());
  CHECK_THROWS_AS(covkit::operator_norm(a), covkit::InvalidInput);
  CHECK_THROWS_AS(covkit::cholesky(a), covkit::InvalidInput);

  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(SymmetricMatrix::from_dense(bad), covkit::InvalidInput);
}

TEST_CASE("symmetry validation and arithmetic guards") {
  Eigen::MatrixXd skew(2, 2);
  skew << 0.0, 1.0, -1.0, 0.0;
  CHECK_THROWS_AS(SymmetricMatrix::from_dense(skew), covkit::InvalidInput);
  CHECK_THROWS_AS(SymmetricMatrix::from_dense(Eigen::MatrixXd::Zero(2, 3)),
                  covkit::InvalidInput);

  Eigen::MatrixXd nearly(2, 2);
  nearly << 1.0, 0.5 + 1e-13, 0.5, 1.0;
  const SymmetricMatrix sym = SymmetricMatrix::from_dense(nearly, 1e-12);
  CHECK(sym(0, 1) == sym(1, 0));

  CHECK_THROWS_AS(SymmetricMatrix(3) + SymmetricMatrix(4), covkit::InvalidInput);
  CHECK_THROWS_AS(SymmetricMatrix(0), covkit::InvalidInput);
}

TEST_CASE("dimension cap guards construction") {
  const int saved = covkit::max_dim();
  covkit::set_max_dim(8);
  CHECK_THROWS_AS(SymmetricMatrix(9), covkit::InvalidInput);
  CHECK_NOTHROW(SymmetricMatrix(8));
  covkit::set_max_dim(saved);
}
