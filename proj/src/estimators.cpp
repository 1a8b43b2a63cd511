#include "covkit/estimators.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "covkit/matcore.hpp"

namespace covkit {

namespace {

void check_taper_k(int k) {
  if (k < 2 || k % 2 != 0)
    throw InvalidInput(fmt::format("taper width must be even and >= 2, got {}", k));
}

// Width clip: beyond 2(p-1)+2 every weight is 1, so wider requests are
// equivalent. Preserves evenness.
int clip_taper_k(int k, int p) { return std::min(k, 2 * (p - 1) + 2); }

Eigen::MatrixXd centered(const SampleSet& s) {
  return s.observations().colwise() - s.mean();
}

}  // namespace

TaperWeights::TaperWeights(int k, int p) : k(k), k_h(k / 2), p(p) {
  check_taper_k(k);
  if (p < 1) throw InvalidInput("dimension must be >= 1");
}

double TaperWeights::weight(int d) const {
  if (d < 0) throw InvalidInput("distance must be nonnegative");
  if (d <= k_h) return 1.0;
  if (d >= k) return 0.0;
  return 2.0 - static_cast<double>(d) / k_h;
}

double taper_weight(int k, int d) {
  check_taper_k(k);
  return TaperWeights(k, 1).weight(d);
}

SymmetricMatrix mle_covariance(const SampleSet& s) {
  const int p = s.p();
  const Eigen::MatrixXd dev = centered(s);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(p, p);
  cov.selfadjointView<Eigen::Lower>().rankUpdate(dev, 1.0 / s.n());
  cov.triangularView<Eigen::StrictlyUpper>() = cov.transpose();
  return SymmetricMatrix::from_dense(cov);
}

SymmetricMatrix sample_covariance(const SampleSet& s) {
  return mle_covariance(s).scaled(static_cast<double>(s.n()) / (s.n() - 1));
}

SymmetricMatrix taper_matrix(const SymmetricMatrix& a, int k) {
  check_taper_k(k);
  const int p = a.dim();
  const TaperWeights w(clip_taper_k(k, p), p);
  SymmetricMatrix out(p);
  for (int j = 0; j < p; ++j)
    for (int i = j; i < p; ++i) out.set(i, j, w.weight(i - j) * a(i, j));
  return out;
}

SymmetricMatrix taper_estimate(const SampleSet& s, int k) {
  return taper_matrix(mle_covariance(s), k);
}

namespace {

// Sum of the width-m diagonal blocks of `a` over all shifts whose
// block intersects the index range.
Eigen::MatrixXd shifted_block_sum(const Eigen::MatrixXd& a, int m) {
  const int p = static_cast<int>(a.rows());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(p, p);
  for (int l = -(m - 1); l < p; ++l) {
    const int lo = std::max(l, 0);
    const int hi = std::min(l + m - 1, p - 1);
    if (lo > hi) continue;
    const int w = hi - lo + 1;
    s.block(lo, lo, w, w) += a.block(lo, lo, w, w);
  }
  return s;
}

}  // namespace

SymmetricMatrix block_sum_estimate(const SampleSet& s, int k) {
  check_taper_k(k);
  const SymmetricMatrix mle = mle_covariance(s);
  const int keff = clip_taper_k(k, mle.dim());
  const int kh = keff / 2;
  Eigen::MatrixXd sum =
      (shifted_block_sum(mle.dense(), keff) - shifted_block_sum(mle.dense(), kh)) /
      kh;
  return SymmetricMatrix::from_dense(sum);
}

SymmetricMatrix band_matrix(const SymmetricMatrix& a, int k) {
  if (k < 0) throw InvalidInput(fmt::format("band width must be >= 0, got {}", k));
  const int p = a.dim();
  SymmetricMatrix out(p);
  for (int j = 0; j < p; ++j)
    for (int i = j; i <= std::min(j + k, p - 1); ++i) out.set(i, j, a(i, j));
  return out;
}

SymmetricMatrix band_estimate(const SampleSet& s, int k) {
  return band_matrix(mle_covariance(s), k);
}

int select_bandwidth(const BandwidthRule& rule, int n, int p) {
  if (rule.alpha <= 0.0)
    throw InvalidInput(fmt::format("alpha must be > 0, got {}", rule.alpha));
  if (n < 2) throw InvalidInput(fmt::format("n must be >= 2, got {}", n));
  if (p < 1) throw InvalidInput(fmt::format("p must be >= 1, got {}", p));
  if (rule.estimator != EstimatorKind::Taper && rule.estimator != EstimatorKind::Band)
    throw InvalidInput("bandwidth rules exist only for taper and band");

  const double a = rule.alpha;
  double raw = 0.0;
  if (rule.estimator == EstimatorKind::Taper) {
    raw = rule.loss == Loss::Operator ? std::pow(n, 1.0 / (2.0 * a + 1.0))
                                      : std::pow(n, 1.0 / (2.0 * (a + 1.0)));
  } else {
    if (rule.loss == Loss::Operator) {
      // p = 1 would put log p = 0 in the denominator; the clamp below
      // forces k = 1 there anyway.
      raw = p == 1 ? 1.0
                   : std::pow(n / std::log(static_cast<double>(p)),
                              1.0 / (2.0 * (a + 1.0)));
    } else {
      raw = std::pow(n, 1.0 / (2.0 * (a + 1.0)));
    }
  }

  // +1e-9 keeps exact integer powers from flooring one short.
  int k = static_cast<int>(std::floor(raw + 1e-9));
  k = std::clamp(k, 1, p);
  if (rule.estimator == EstimatorKind::Taper) k = std::max(2, 2 * (k / 2));
  return k;
}

SymmetricMatrix taper_expected(const SymmetricMatrix& sigma, int k) {
  return taper_matrix(sigma, k);
}

SymmetricMatrix floored_inverse(const SymmetricMatrix& a, double eps) {
  if (!(eps > 0.0))
    throw InvalidInput(fmt::format("eigenvalue floor must be > 0, got {}", eps));
  EigenDecomposition ed = eigendecompose(a);
  Eigen::VectorXd inv = ed.values.cwiseMax(eps).cwiseInverse();
  Eigen::MatrixXd b = ed.vectors * inv.asDiagonal() * ed.vectors.transpose();
  return SymmetricMatrix::from_dense(b, std::numeric_limits<double>::infinity());
}

SymmetricMatrix inverse_estimate(const SampleSet& s, int k, double eps) {
  return floored_inverse(taper_estimate(s, k), eps);
}

BlockMaxDiagnostic block_max_diagnostic(const SampleSet& s,
                                        const SymmetricMatrix& sigma, int k) {
  check_taper_k(k);
  if (sigma.dim() != s.p())
    throw InvalidInput(fmt::format("dimension mismatch: sigma {} vs data {}",
                                   sigma.dim(), s.p()));
  const int p = s.p();
  const int keff = clip_taper_k(k, p);

  // Uncentered second moments; their expectation is sigma exactly when
  // the data are mean zero.
  Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(p, p);
  raw.selfadjointView<Eigen::Lower>().rankUpdate(s.observations(), 1.0 / s.n());
  raw.triangularView<Eigen::StrictlyUpper>() = raw.transpose();
  const SymmetricMatrix second = SymmetricMatrix::from_dense(raw);

  const SymmetricMatrix dev = taper_matrix(second, keff) - taper_matrix(sigma, keff);
  BlockMaxDiagnostic diag{};
  diag.deviation = operator_norm(dev);

  const Eigen::MatrixXd delta = second.dense() - sigma.dense();
  double worst = 0.0;
  for (int l = -(keff - 1); l < p; ++l) {
    const int lo = std::max(l, 0);
    const int hi = std::min(l + keff - 1, p - 1);
    if (lo > hi) continue;
    const int w = hi - lo + 1;
    const SymmetricMatrix block =
        SymmetricMatrix::from_dense(delta.block(lo, lo, w, w));
    worst = std::max(worst, operator_norm(block));
  }
  diag.bound = 3.0 * worst;
  return diag;
}

const char* to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::Taper: return "taper";
    case EstimatorKind::Band: return "band";
    case EstimatorKind::Mle: return "mle";
    case EstimatorKind::Sample: return "sample";
  }
  return "unknown";
}

EstimatorKind estimator_kind_from_string(const std::string& name) {
  if (name == "taper") return EstimatorKind::Taper;
  if (name == "band") return EstimatorKind::Band;
  if (name == "mle") return EstimatorKind::Mle;
  if (name == "sample") return EstimatorKind::Sample;
  throw InvalidInput(fmt::format("unknown estimator '{}'", name));
}

}  // namespace covkit
