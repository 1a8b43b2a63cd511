#pragma once

#include "covkit/sample_set.hpp"
#include "covkit/sym_matrix.hpp"

namespace covkit {

enum class EstimatorKind { Taper, Band, Mle, Sample };

/// Loss norms a bandwidth rule can target.
enum class Loss { Operator, Frobenius };

/// Trapezoid weight profile of width k (even, >= 2): flat at 1 up to
/// distance k/2, linear down to 0 at distance k.
struct TaperWeights {
  int k;
  int k_h;  // k/2
  int p;

  TaperWeights(int k, int p);

  /// Weight at distance d = |i-j|.
  double weight(int d) const;
};

/// Rule mapping (n, p) to a bandwidth for the given estimator and
/// target loss.
struct BandwidthRule {
  Loss loss = Loss::Operator;
  EstimatorKind estimator = EstimatorKind::Taper;  // Taper or Band only
  double alpha = 0.5;
};

/// Centered second-moment estimate (1/n) sum_l (X_l - Xbar)(X_l - Xbar)^T.
SymmetricMatrix mle_covariance(const SampleSet& s);

/// Unbiased variant: mle_covariance scaled by n/(n-1).
SymmetricMatrix sample_covariance(const SampleSet& s);

/// Weight at distance d for taper width k. k must be even and >= 2.
double taper_weight(int k, int d);

/// Entrywise product of `a` with the width-k trapezoid profile.
/// k is clipped to min(k, 2(p-1)+2), beyond which all weights are 1.
SymmetricMatrix taper_matrix(const SymmetricMatrix& a, int k);

/// Tapered covariance estimate: taper_matrix(mle_covariance(S), k).
/// Symmetric but not necessarily PSD.
SymmetricMatrix taper_estimate(const SampleSet& s, int k);

/// Same estimator assembled by the block route: S(m) sums the width-m
/// diagonal blocks of the MLE over every shift touching [0, p);
/// the result is (S(k) - S(k/2)) / (k/2). Agrees with taper_estimate
/// to fp roundoff; kept as an independently-coded cross-check.
SymmetricMatrix block_sum_estimate(const SampleSet& s, int k);

/// Hard truncation of `a` outside the band |i-j| <= k (k >= 0; values
/// above p-1 act as p-1).
SymmetricMatrix band_matrix(const SymmetricMatrix& a, int k);

/// Banded covariance estimate: band_matrix(mle_covariance(S), k).
SymmetricMatrix band_estimate(const SampleSet& s, int k);

/// Bandwidth from the rate-optimal rules:
///   taper/operator   floor(n^(1/(2a+1)))
///   taper/frobenius  floor(n^(1/(2(a+1))))
///   band/operator    floor((n/log p)^(1/(2(a+1))))
///   band/frobenius   floor(n^(1/(2(a+1))))
/// clamped to [1, p]; taper results are rounded down to an even
/// integer >= 2.
int select_bandwidth(const BandwidthRule& rule, int n, int p);

/// Exact expectation of the tapering estimator when the truth is
/// `sigma` and the data are mean zero: the entrywise weight product.
SymmetricMatrix taper_expected(const SymmetricMatrix& sigma, int k);

/// Floors the eigenvalues of `a` at eps > 0 and inverts through the
/// eigendecomposition. Equivalent to PSD-projecting first, since
/// max(max(x,0),eps) = max(x,eps). Result is PD with largest
/// eigenvalue <= 1/eps.
SymmetricMatrix floored_inverse(const SymmetricMatrix& a, double eps);

/// Inverse-covariance estimate: floored_inverse(taper_estimate(S,k), eps).
SymmetricMatrix inverse_estimate(const SampleSet& s, int k, double eps = 1e-3);

/// Operator-norm deviation of the taper estimate built from
/// *uncentered* second moments against its exact expectation
/// (mean-zero data assumed), next to three times the worst width-k
/// diagonal-block deviation. `deviation <= bound` is the block-max
/// inequality this diagnostic exists to exhibit.
struct BlockMaxDiagnostic {
  double deviation;
  double bound;
};
BlockMaxDiagnostic block_max_diagnostic(const SampleSet& s,
                                        const SymmetricMatrix& sigma, int k);

const char* to_string(EstimatorKind kind);
EstimatorKind estimator_kind_from_string(const std::string& name);

}  // namespace covkit
