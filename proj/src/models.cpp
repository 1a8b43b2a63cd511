#include "covkit/models.hpp"

#include <fmt/format.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "covkit/matcore.hpp"
#include "covkit/rng.hpp"

namespace covkit {

namespace {
constexpr double kRelSlack = 1e-12;  // fp slack for membership comparisons
}

void DecayClassParams::validate() const {
  if (!(alpha > 0.0)) throw InvalidInput(fmt::format("alpha must be > 0, got {}", alpha));
  if (!(M > 0.0)) throw InvalidInput(fmt::format("M must be > 0, got {}", M));
  if (!(M0 > 0.0)) throw InvalidInput(fmt::format("M0 must be > 0, got {}", M0));
  if (!(M1 > 0.0)) throw InvalidInput(fmt::format("M1 must be > 0, got {}", M1));
  if (delta < 0.0) throw InvalidInput(fmt::format("delta must be >= 0, got {}", delta));
  if (delta > M0)
    throw InvalidInput(fmt::format("delta {} exceeds eigenvalue cap M0 {}", delta, M0));
  if (!(rho_subg > 0.0))
    throw InvalidInput(fmt::format("rho_subg must be > 0, got {}", rho_subg));
}

HypercubeTheta HypercubeTheta::zeros(int d) {
  if (d < 0) throw InvalidInput("hypercube dimension must be >= 0");
  HypercubeTheta t;
  t.bits.assign(static_cast<std::size_t>(d), 0);
  return t;
}

HypercubeTheta HypercubeTheta::ones(int d) {
  HypercubeTheta t = zeros(d);
  std::fill(t.bits.begin(), t.bits.end(), 1);
  return t;
}

int f11_bandwidth(int n, double alpha) {
  if (n < 2) throw InvalidInput(fmt::format("n must be >= 2, got {}", n));
  if (!(alpha > 0.0)) throw InvalidInput(fmt::format("alpha must be > 0, got {}", alpha));
  const double raw = std::pow(n, 1.0 / (2.0 * alpha + 1.0));
  return std::max(1, static_cast<int>(std::floor(raw + 1e-9)));
}

double f12_effective_dim(int p, int n) {
  if (p < 1) throw InvalidInput(fmt::format("p must be >= 1, got {}", p));
  if (n < 1) throw InvalidInput(fmt::format("n must be >= 1, got {}", n));
  // e^(n/2) overflows double past n ~ 1400; compare in log space.
  if (0.5 * n >= std::log(static_cast<double>(p))) return p;
  return std::exp(0.5 * n);
}

int g2_hypercube_dim(int p, int k) {
  if (k < 1 || k > p - 1)
    throw InvalidInput(fmt::format("band half-width must be in [1, p-1], got k={} p={}", k, p));
  return k * p - k * (k + 1) / 2;
}

SymmetricMatrix toeplitz_decay_matrix(int p, double alpha, double rho) {
  if (!(alpha > 0.0)) throw InvalidInput(fmt::format("alpha must be > 0, got {}", alpha));
  if (!(std::abs(rho) <= 1.0))
    throw InvalidInput(fmt::format("model correlation must be in [-1,1], got {}", rho));
  SymmetricMatrix sigma(p);
  std::vector<double> byDistance(static_cast<std::size_t>(p));
  byDistance[0] = 1.0;
  for (int d = 1; d < p; ++d)
    byDistance[static_cast<std::size_t>(d)] = rho * std::pow(d, -(alpha + 1.0));
  for (int j = 0; j < p; ++j)
    for (int i = j; i < p; ++i) sigma.set(i, j, byDistance[static_cast<std::size_t>(i - j)]);
  return sigma;
}

SymmetricMatrix f11_matrix(int p, int k, double a, double tau,
                           const HypercubeTheta& theta) {
  if (k < 1) throw InvalidInput(fmt::format("k must be >= 1, got {}", k));
  if (2 * k > p)
    throw InvalidInput(
        fmt::format("family needs 2k <= p, got k={} p={}", k, p));
  if (!(a > 0.0)) throw InvalidInput(fmt::format("scale a must be > 0, got {}", a));
  if (tau < 0.0) throw InvalidInput(fmt::format("tau must be >= 0, got {}", tau));
  if (theta.dim() != k)
    throw InvalidInput(
        fmt::format("theta has {} bits, expected k={}", theta.dim(), k));
  SymmetricMatrix sigma = SymmetricMatrix::identity(p);
  const double scale = tau * a;
  for (int m = 1; m <= k; ++m) {
    if (!theta.bits[static_cast<std::size_t>(m - 1)]) continue;
    for (int j = m + 1; j <= 2 * k; ++j) sigma.set(m - 1, j - 1, scale);
  }
  return sigma;
}

namespace {

SymmetricMatrix realize_f12(const CovarianceModel& model) {
  const double p1 = f12_effective_dim(model.p, model.n);
  const int m = model.index_m;
  if (m < 0 || m > static_cast<int>(std::floor(p1)))
    throw InvalidInput(
        fmt::format("member index must be in [0, {}], got {}", std::floor(p1), m));
  if (model.tau < 0.0)
    throw InvalidInput(fmt::format("tau must be >= 0, got {}", model.tau));
  SymmetricMatrix sigma = SymmetricMatrix::identity(model.p);
  if (m >= 1) {
    const double bump = std::sqrt(model.tau * std::log(p1) / model.n);
    sigma.set(m - 1, m - 1, 1.0 + bump);
  }
  return sigma;
}

SymmetricMatrix realize_fstar(const CovarianceModel& model) {
  const int p = model.p;
  if (p < 2 || p % 2 != 0)
    throw InvalidInput(fmt::format("family needs even p >= 2, got {}", p));
  if (model.n < 1) throw InvalidInput("n must be >= 1");
  if (model.tau < 0.0) throw InvalidInput("tau must be >= 0");
  if (model.theta.dim() != p / 2)
    throw InvalidInput(
        fmt::format("theta has {} bits, expected p/2={}", model.theta.dim(), p / 2));
  SymmetricMatrix sigma = SymmetricMatrix::identity(p);
  const double scale = model.tau / std::sqrt(static_cast<double>(model.n) * p);
  for (int m = 1; m <= p / 2; ++m) {
    if (!model.theta.bits[static_cast<std::size_t>(m - 1)]) continue;
    for (int j = m + 1; j <= p; ++j) sigma.set(m - 1, j - 1, scale);
  }
  return sigma;
}

SymmetricMatrix realize_g2(const CovarianceModel& model) {
  const int p = model.p;
  int k = model.k;
  if (k == 0) {
    if (model.n < 2) throw InvalidInput("n must be >= 2 to derive a band width");
    model.params.validate();
    k = static_cast<int>(std::floor(
        std::pow(model.n, 1.0 / (2.0 * (model.params.alpha + 1.0))) + 1e-9));
    k = std::clamp(k, 1, p - 1);
  }
  const int dim = g2_hypercube_dim(p, k);
  if (model.theta.dim() != dim)
    throw InvalidInput(
        fmt::format("theta has {} bits, expected {}", model.theta.dim(), dim));
  if (model.n < 1) throw InvalidInput("n must be >= 1");
  if (model.tau < 0.0) throw InvalidInput("tau must be >= 0");
  SymmetricMatrix sigma = SymmetricMatrix::identity(p);
  const double scale = model.tau / std::sqrt(static_cast<double>(model.n));
  std::size_t t = 0;
  for (int i = 1; i <= p - 1; ++i)
    for (int j = i + 1; j <= std::min(i + k, p); ++j, ++t)
      if (model.theta.bits[t]) sigma.set(i - 1, j - 1, scale);
  return sigma;
}

}  // namespace

SymmetricMatrix realize(const CovarianceModel& model) {
  if (model.p < 1) throw InvalidInput(fmt::format("p must be >= 1, got {}", model.p));
  switch (model.kind) {
    case ModelKind::Identity:
      return SymmetricMatrix::identity(model.p);
    case ModelKind::ToeplitzDecay:
      return toeplitz_decay_matrix(model.p, model.params.alpha, model.rho);
    case ModelKind::F11: {
      const int k = f11_bandwidth(model.n, model.params.alpha);
      const double a = std::pow(k, -(model.params.alpha + 1.0));
      return f11_matrix(model.p, k, a, model.tau, model.theta);
    }
    case ModelKind::F12:
      return realize_f12(model);
    case ModelKind::FStar:
      return realize_fstar(model);
    case ModelKind::G2:
      return realize_g2(model);
  }
  throw InvalidInput("unknown model kind");
}

namespace {

double lambda_max(const SymmetricMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sigma.dense(),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericFailure("membership check: eigenvalue iteration failed");
  return solver.eigenvalues().maxCoeff();
}

// tails[c] = max_j sum_{|i-j|>c} |sigma_ij| for c in [0, p-1], with the
// attaining column recorded. O(p^2) time, O(p) memory.
struct TailTable {
  std::vector<double> tail;
  std::vector<int> column;
};

TailTable column_tails(const SymmetricMatrix& sigma) {
  const int p = sigma.dim();
  TailTable t;
  t.tail.assign(static_cast<std::size_t>(p), 0.0);
  t.column.assign(static_cast<std::size_t>(p), 0);
  std::vector<double> byDistance(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) {
    std::fill(byDistance.begin(), byDistance.end(), 0.0);
    for (int i = 0; i < p; ++i)
      byDistance[static_cast<std::size_t>(std::abs(i - j))] += std::abs(sigma(i, j));
    double suffix = 0.0;
    for (int c = p - 1; c >= 0; --c) {
      // suffix = sum over distances > c after this update order:
      if (c + 1 <= p - 1) suffix += byDistance[static_cast<std::size_t>(c + 1)];
      if (suffix > t.tail[static_cast<std::size_t>(c)]) {
        t.tail[static_cast<std::size_t>(c)] = suffix;
        t.column[static_cast<std::size_t>(c)] = j;
      }
    }
  }
  return t;
}

}  // namespace

MembershipReport check_membership_f_alpha(const SymmetricMatrix& sigma,
                                          const DecayClassParams& params) {
  params.validate();
  if (!sigma.all_finite())
    throw InvalidInput("membership check: matrix has non-finite entries");
  MembershipReport report;
  const int p = sigma.dim();
  const TailTable tails = column_tails(sigma);
  for (int c = 1; c <= p - 1; ++c) {
    const double budget = params.M * std::pow(c, -params.alpha);
    const double got = tails.tail[static_cast<std::size_t>(c)];
    if (got > budget * (1.0 + kRelSlack)) {
      report.member = false;
      report.violation = fmt::format(
          "tail {} at cutoff {} (column {}) exceeds budget M*c^-alpha = {}", got,
          c, tails.column[static_cast<std::size_t>(c)], budget);
      return report;
    }
  }
  const double top = lambda_max(sigma);
  if (top > params.M0 * (1.0 + kRelSlack)) {
    report.member = false;
    report.violation =
        fmt::format("largest eigenvalue {} exceeds cap M0 = {}", top, params.M0);
    return report;
  }
  report.member = true;
  return report;
}

MembershipReport check_membership_g_alpha(const SymmetricMatrix& sigma,
                                          const DecayClassParams& params) {
  params.validate();
  if (!sigma.all_finite())
    throw InvalidInput("membership check: matrix has non-finite entries");
  MembershipReport report;
  const int p = sigma.dim();
  for (int j = 0; j < p; ++j)
    for (int i = j + 1; i < p; ++i) {
      const double budget = params.M1 * std::pow(i - j, -(params.alpha + 1.0));
      if (std::abs(sigma(i, j)) > budget * (1.0 + kRelSlack)) {
        report.member = false;
        report.violation = fmt::format(
            "entry ({}, {}) = {} exceeds M1*|i-j|^-(alpha+1) = {}", i, j,
            sigma(i, j), budget);
        return report;
      }
    }
  const double top = lambda_max(sigma);
  if (top > params.M0 * (1.0 + kRelSlack)) {
    report.member = false;
    report.violation =
        fmt::format("largest eigenvalue {} exceeds cap M0 = {}", top, params.M0);
    return report;
  }
  report.member = true;
  return report;
}

double min_tail_constant(const SymmetricMatrix& sigma, double alpha) {
  if (!(alpha > 0.0)) throw InvalidInput(fmt::format("alpha must be > 0, got {}", alpha));
  const int p = sigma.dim();
  const TailTable tails = column_tails(sigma);
  double worst = 0.0;
  for (int c = 1; c <= p - 1; ++c)
    worst = std::max(worst,
                     tails.tail[static_cast<std::size_t>(c)] * std::pow(c, alpha));
  return worst;
}

GaussianSampler::GaussianSampler(const SymmetricMatrix& sigma) {
  if (!sigma.all_finite())
    throw InvalidInput("sampler: covariance has non-finite entries");
  try {
    factor_ = cholesky(sigma);
    return;
  } catch (const NotPositiveDefinite&) {
    // Semidefinite or numerically singular: factor through the
    // eigendecomposition with near-zero clipping.
  }
  EigenDecomposition ed = eigendecompose(sigma);
  const double top = std::max(ed.values.maxCoeff(), 0.0);
  const double floor = -1e-10 * top;
  if (ed.values.minCoeff() < floor)
    throw InvalidInput(
        fmt::format("covariance is not PSD: smallest eigenvalue {} below "
                    "tolerance {}",
                    ed.values.minCoeff(), floor));
  Eigen::VectorXd clipped = ed.values.cwiseMax(0.0);
  factor_ = ed.vectors * clipped.cwiseSqrt().asDiagonal();
}

SampleSet GaussianSampler::draw(int n, std::uint64_t seed,
                                std::uint64_t stream) const {
  if (n < 2) throw InvalidInput(fmt::format("n must be >= 2, got {}", n));
  const int p = dim();
  Eigen::MatrixXd z(p, n);
  NormalStream rng(seed, stream);
  rng.fill(z.data(), static_cast<std::size_t>(p) * static_cast<std::size_t>(n));
  return SampleSet(factor_ * z);
}

SampleSet sample_gaussian(const SymmetricMatrix& sigma, int n, std::uint64_t seed) {
  return GaussianSampler(sigma).draw(n, seed);
}

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::ToeplitzDecay: return "toeplitz_decay";
    case ModelKind::F11: return "f11";
    case ModelKind::F12: return "f12";
    case ModelKind::FStar: return "fstar";
    case ModelKind::G2: return "g2";
    case ModelKind::Identity: return "identity";
  }
  return "unknown";
}

}  // namespace covkit
