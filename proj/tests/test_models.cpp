#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "covkit/errors.hpp"
#include "covkit/estimators.hpp"
#include "covkit/matcore.hpp"
#include "covkit/models.hpp"

using covkit::CovarianceModel;
using covkit::DecayClassParams;
using covkit::HypercubeTheta;
using covkit::ModelKind;
using covkit::SymmetricMatrix;

namespace {

// Exact column tail sums, independent of the production implementation.
double tail_oracle(const SymmetricMatrix& sigma, int cutoff) {
  double worst = 0.0;
  for (int j = 0; j < sigma.dim(); ++j) {
    double sum = 0.0;
    for (int i = 0; i < sigma.dim(); ++i)
      if (std::abs(i - j) > cutoff) sum += std::abs(sigma(i, j));
    worst = std::max(worst, sum);
  }
  return worst;
}

}  // namespace

TEST_CASE("toeplitz decay matrix entries") {
  const SymmetricMatrix t = covkit::toeplitz_decay_matrix(3, 0.1, 0.6);
  CHECK(t(0, 0) == 1.0);
  CHECK(t(1, 1) == 1.0);
  CHECK(t(0, 1) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(t(1, 2) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(t(0, 2) == doctest::Approx(0.6 * std::pow(2.0, -1.1)).epsilon(1e-15));

  CHECK_THROWS_AS(covkit::toeplitz_decay_matrix(3, 0.1, 1.5), covkit::InvalidInput);
  CHECK_THROWS_AS(covkit::toeplitz_decay_matrix(0, 0.1, 0.5), covkit::InvalidInput);
}

TEST_CASE("toeplitz decay model is nonnegative definite at the study scale") {
  for (int p : {50, 250}) {
    for (double alpha : {0.1, 0.3, 0.5}) {
      const SymmetricMatrix t = covkit::toeplitz_decay_matrix(p, alpha, 0.6);
      const covkit::EigenDecomposition ed = covkit::eigendecompose(t);
      CHECK(ed.values(p - 1) >= -1e-8);
    }
  }
}

TEST_CASE("f11 with all-zero theta is the identity") {
  CovarianceModel model;
  model.kind = ModelKind::F11;
  model.p = 20;
  model.n = 64;
  model.params.alpha = 0.5;
  model.tau = 0.3;
  model.theta = HypercubeTheta::zeros(covkit::f11_bandwidth(64, 0.5));
  const SymmetricMatrix sigma = covkit::realize(model);
  CHECK((sigma.dense() - Eigen::MatrixXd::Identity(20, 20)).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("f11 places tau*a rows in the leading corner") {
  // k=2, a=2^-(alpha+1): bit m selects row m with columns m+1..2k (one-based).
  const int p = 6, k = 2;
  const double alpha = 1.0, tau = 0.4;
  const double a = std::pow(2.0, -(alpha + 1.0));
  HypercubeTheta theta = HypercubeTheta::zeros(k);
  theta.bits[0] = 1;
  const SymmetricMatrix sigma = covkit::f11_matrix(p, k, a, tau, theta);
  for (int i = 0; i < p; ++i) CHECK(sigma(i, i) == 1.0);
  CHECK(sigma(0, 1) == doctest::Approx(tau * a).epsilon(1e-15));
  CHECK(sigma(0, 2) == doctest::Approx(tau * a).epsilon(1e-15));
  CHECK(sigma(0, 3) == doctest::Approx(tau * a).epsilon(1e-15));
  CHECK(sigma(0, 4) == 0.0);
  CHECK(sigma(1, 2) == 0.0);
  CHECK(sigma(1, 3) == 0.0);

  theta.bits[1] = 1;
  const SymmetricMatrix both = covkit::f11_matrix(p, k, a, tau, theta);
  CHECK(both(1, 2) == doctest::Approx(tau * a).epsilon(1e-15));
  CHECK(both(1, 3) == doctest::Approx(tau * a).epsilon(1e-15));
  CHECK(both(1, 4) == 0.0);
}

TEST_CASE("f11 rejects 2k > p and wrong theta length") {
  CovarianceModel model;
  model.kind = ModelKind::F11;
  model.p = 10;
  model.n = 4096;  // k = floor(4096^(1/2)) = 64, 2k = 128 > 10
  model.params.alpha = 0.5;
  model.tau = 0.3;
  model.theta = HypercubeTheta::zeros(covkit::f11_bandwidth(model.n, 0.5));
  CHECK_THROWS_AS(covkit::realize(model), covkit::InvalidInput);

  HypercubeTheta bad = HypercubeTheta::zeros(3);
  CHECK_THROWS_AS(covkit::f11_matrix(10, 2, 0.1, 0.3, bad), covkit::InvalidInput);
}

TEST_CASE("f12 diagonal bump and identity member") {
  CovarianceModel model;
  model.kind = ModelKind::F12;
  model.p = 10;
  model.n = 50;
  model.tau = 0.5;
  model.index_m = 0;
  const SymmetricMatrix eye = covkit::realize(model);
  CHECK((eye.dense() - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff() ==
        0.0);

  model.index_m = 3;
  const SymmetricMatrix bumped = covkit::realize(model);
  const double p1 = covkit::f12_effective_dim(10, 50);
  const double bump = std::sqrt(0.5 * std::log(p1) / 50.0);
  for (int i = 0; i < 10; ++i)
    CHECK(bumped(i, i) == doctest::Approx(i == 2 ? 1.0 + bump : 1.0).epsilon(1e-15));
  CHECK(covkit::frobenius_norm(bumped) ==
        doctest::Approx(std::sqrt(9.0 + (1.0 + bump) * (1.0 + bump))));
}

TEST_CASE("f12 effective dimension saturates at p") {
  CHECK(covkit::f12_effective_dim(10, 200) == 10.0);
  CHECK(covkit::f12_effective_dim(10, 2) == doctest::Approx(std::exp(1.0)));
  // Large n must not overflow exp.
  CHECK(covkit::f12_effective_dim(3000, 100000) == 3000.0);
}

TEST_CASE("g2 with all-ones theta fills the band uniformly") {
  CovarianceModel model;
  model.kind = ModelKind::G2;
  model.p = 4;
  model.n = 100;
  model.tau = 0.5;
  model.k = 1;
  model.theta = HypercubeTheta::ones(covkit::g2_hypercube_dim(4, 1));
  const SymmetricMatrix sigma = covkit::realize(model);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const int d = std::abs(i - j);
      const double expected = d == 0 ? 1.0 : (d == 1 ? 0.05 : 0.0);
      CHECK(sigma(i, j) == doctest::Approx(expected).epsilon(1e-15));
    }
}

TEST_CASE("g2 hypercube dimension counts band positions") {
  CHECK(covkit::g2_hypercube_dim(4, 1) == 3);
  CHECK(covkit::g2_hypercube_dim(5, 2) == 7);
  CHECK(covkit::g2_hypercube_dim(6, 5) == 15);  // full strict upper triangle
}

TEST_CASE("g2 theta bits map row-major onto band positions") {
  const int p = 5, k = 2;
  HypercubeTheta theta = HypercubeTheta::zeros(covkit::g2_hypercube_dim(p, k));
  theta.bits[0] = 1;  // (0,1)
  theta.bits[1] = 1;  // (0,2)
  theta.bits[6] = 1;  // last position: (3,4)
  CovarianceModel model;
  model.kind = ModelKind::G2;
  model.p = p;
  model.n = 400;
  model.tau = 1.0;
  model.k = k;
  model.theta = theta;
  const SymmetricMatrix sigma = covkit::realize(model);
  const double step = 1.0 / std::sqrt(400.0);
  CHECK(sigma(0, 1) == doctest::Approx(step));
  CHECK(sigma(0, 2) == doctest::Approx(step));
  CHECK(sigma(3, 4) == doctest::Approx(step));
  CHECK(sigma(1, 2) == 0.0);
  CHECK(sigma(1, 3) == 0.0);
  CHECK(sigma(2, 3) == 0.0);
  CHECK(sigma(2, 4) == 0.0);
}

TEST_CASE("fstar rows reach the right edge") {
  CovarianceModel model;
  model.kind = ModelKind::FStar;
  model.p = 6;
  model.n = 100;
  model.tau = 0.9;
  model.theta = HypercubeTheta::zeros(3);
  model.theta.bits[1] = 1;  // row 2 (one-based), columns 3..6
  const SymmetricMatrix sigma = covkit::realize(model);
  const double step = 0.9 / std::sqrt(100.0 * 6.0);
  CHECK(sigma(1, 2) == doctest::Approx(step));
  CHECK(sigma(1, 3) == doctest::Approx(step));
  CHECK(sigma(1, 5) == doctest::Approx(step));
  CHECK(sigma(0, 1) == 0.0);
  CHECK(sigma(2, 3) == 0.0);

  model.p = 5;  // odd dimension rejected
  CHECK_THROWS_AS(covkit::realize(model), covkit::InvalidInput);
}

TEST_CASE("family matrices keep a unit diagonal except f12") {
  CovarianceModel f11;
  f11.kind = ModelKind::F11;
  f11.p = 12;
  f11.n = 25;  // k = 5^(2/(2a+1))... floor(25^(1/2)) = 5, 2k = 10 <= 12
  f11.params.alpha = 0.5;
  f11.tau = 0.2;
  f11.theta = HypercubeTheta::ones(covkit::f11_bandwidth(25, 0.5));
  const SymmetricMatrix s11 = covkit::realize(f11);
  for (int i = 0; i < 12; ++i) CHECK(s11(i, i) == 1.0);

  CovarianceModel g2;
  g2.kind = ModelKind::G2;
  g2.p = 7;
  g2.n = 49;
  g2.params.alpha = 0.5;
  g2.tau = 0.3;
  g2.k = 2;
  g2.theta = HypercubeTheta::ones(covkit::g2_hypercube_dim(7, 2));
  const SymmetricMatrix sg2 = covkit::realize(g2);
  for (int i = 0; i < 7; ++i) CHECK(sg2(i, i) == 1.0);
}

TEST_CASE("f-class membership accepts the identity and flags far mass") {
  DecayClassParams params;
  params.alpha = 0.4;
  params.M = 0.5;
  params.M0 = 1.5;
  const covkit::MembershipReport ok =
      covkit::check_membership_f_alpha(SymmetricMatrix::identity(8), params);
  CHECK(ok.member);
  CHECK(ok.violation.empty());

  SymmetricMatrix far = SymmetricMatrix::identity(8);
  far.set(0, 6, 1.0);
  params.M = 0.01;
  params.M0 = 10.0;
  const covkit::MembershipReport bad =
      covkit::check_membership_f_alpha(far, params);
  CHECK_FALSE(bad.member);
  CHECK_FALSE(bad.violation.empty());
}

TEST_CASE("f-class membership of the decay model via the tail oracle") {
  for (double alpha : {0.1, 0.3, 0.5}) {
    const int p = 60;
    const double rho = 0.6;
    const SymmetricMatrix t = covkit::toeplitz_decay_matrix(p, alpha, rho);
    DecayClassParams params;
    params.alpha = alpha;
    params.M = rho * (1.0 + 1.0 / alpha) * std::pow(2.0, alpha);
    params.M0 = covkit::eigendecompose(t).values(0) + 0.1;
    const covkit::MembershipReport report =
        covkit::check_membership_f_alpha(t, params);
    CHECK(report.member);

    // The production checker agrees with the direct tail oracle cutoff
    // by cutoff.
    for (int c = 1; c < p; ++c)
      CHECK(tail_oracle(t, c) <= params.M * std::pow(c, -alpha) * (1.0 + 1e-12));
  }
}

TEST_CASE("f-class membership enforces the eigenvalue cap") {
  DecayClassParams params;
  params.alpha = 0.5;
  params.M = 10.0;
  params.M0 = 0.5;  // identity has lambda_max = 1 > 0.5
  const covkit::MembershipReport report =
      covkit::check_membership_f_alpha(SymmetricMatrix::identity(4), params);
  CHECK_FALSE(report.member);
  CHECK(report.violation.find("eigenvalue") != std::string::npos);
}

TEST_CASE("g-class membership checks entrywise decay") {
  DecayClassParams params;
  params.alpha = 0.3;
  params.M1 = 1.0;
  params.M0 = 2.0;
  CHECK(covkit::check_membership_g_alpha(SymmetricMatrix::identity(6), params)
            .member);

  params.M1 = 0.6;
  params.M0 = 10.0;
  const SymmetricMatrix t = covkit::toeplitz_decay_matrix(20, 0.3, 0.6);
  CHECK(covkit::check_membership_g_alpha(t, params).member);

  SymmetricMatrix spike = SymmetricMatrix::identity(8);
  spike.set(1, 5, 1.0);
  params.M1 = 0.1;
  const covkit::MembershipReport bad =
      covkit::check_membership_g_alpha(spike, params);
  CHECK_FALSE(bad.member);
  // The scan walks the lower triangle, so the pair reads (5, 1).
  CHECK(bad.violation.find("(5, 1)") != std::string::npos);
}

TEST_CASE("min tail constant matches the direct oracle") {
  const SymmetricMatrix t = covkit::toeplitz_decay_matrix(30, 0.3, 0.6);
  double oracle = 0.0;
  for (int c = 1; c < 30; ++c)
    oracle = std::max(oracle, tail_oracle(t, c) * std::pow(c, 0.3));
  CHECK(covkit::min_tail_constant(t, 0.3) == doctest::Approx(oracle).epsilon(1e-12));

  // By construction the matrix passes membership at exactly this M.
  DecayClassParams params;
  params.alpha = 0.3;
  params.M = covkit::min_tail_constant(t, 0.3);
  params.M0 = covkit::eigendecompose(t).values(0) + 1.0;
  CHECK(covkit::check_membership_f_alpha(t, params).member);
}

TEST_CASE("zero covariance draws identically zero observations") {
  const covkit::SampleSet s = covkit::sample_gaussian(SymmetricMatrix(3), 20, 5);
  CHECK(s.observations().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sampler is deterministic in seed and stream") {
  const SymmetricMatrix t = covkit::toeplitz_decay_matrix(6, 0.5, 0.6);
  const covkit::GaussianSampler sampler(t);
  const covkit::SampleSet a = sampler.draw(10, 42, 3);
  const covkit::SampleSet b = sampler.draw(10, 42, 3);
  CHECK((a.observations() - b.observations()).cwiseAbs().maxCoeff() == 0.0);
  const covkit::SampleSet c = sampler.draw(10, 42, 4);
  CHECK((a.observations() - c.observations()).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("large-sample moments of the gaussian sampler") {
  const int n = 100000;
  const covkit::SampleSet s =
      covkit::sample_gaussian(SymmetricMatrix::identity(2), n, 77);
  // Mean of each coordinate within 4/sqrt(N).
  CHECK(std::abs(s.mean()(0)) <= 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(s.mean()(1)) <= 4.0 / std::sqrt(static_cast<double>(n)));
  // Sample covariance within 3 standard errors of I (se(var) ~ sqrt(2/n),
  // se(cov) ~ 1/sqrt(n)).
  const SymmetricMatrix cov = covkit::mle_covariance(s);
  CHECK(std::abs(cov(0, 0) - 1.0) <= 3.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(cov(1, 1) - 1.0) <= 3.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(cov(0, 1)) <= 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("sampler accepts nearly-PSD input and rejects indefinite input") {
  // Tiny negative eigenvalue within the clip window.
  SymmetricMatrix nearly(2);
  nearly.set(0, 0, 1.0);
  nearly.set(1, 1, 1.0);
  nearly.set(0, 1, 1.0 + 1e-12);
  CHECK_NOTHROW(covkit::GaussianSampler{nearly});

  SymmetricMatrix indef(2);
  indef.set(0, 0, 1.0);
  indef.set(1, 1, 1.0);
  indef.set(0, 1, 2.0);
  CHECK_THROWS_AS(covkit::GaussianSampler{indef}, covkit::Error);
}

TEST_CASE("model parameter validation") {
  DecayClassParams params;
  params.alpha = 0.0;
  CHECK_THROWS_AS(params.validate(), covkit::InvalidInput);
  params.alpha = 0.5;
  params.delta = 20.0;  // exceeds M0
  CHECK_THROWS_AS(params.validate(), covkit::InvalidInput);

  CHECK(covkit::f11_bandwidth(1000, 0.5) == 31);
  CHECK(covkit::f11_bandwidth(2, 0.5) == 1);
  CHECK_THROWS_AS(covkit::f11_bandwidth(1, 0.5), covkit::InvalidInput);
  CHECK_THROWS_AS(covkit::f11_bandwidth(100, 0.0), covkit::InvalidInput);
}
