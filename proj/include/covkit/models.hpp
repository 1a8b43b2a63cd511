#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covkit/sample_set.hpp"
#include "covkit/sym_matrix.hpp"

namespace covkit {

/// Constants defining the decay classes of true covariances.
struct DecayClassParams {
  double alpha = 0.5;    // decay exponent, > 0
  double M = 1.0;        // column-tail budget (f-class), > 0
  double M0 = 10.0;      // largest-eigenvalue cap, > 0
  double M1 = 1.0;       // entrywise constant (g-class), > 0
  double delta = 0.0;    // smallest-eigenvalue floor, >= 0, <= M0
  double rho_subg = 1.0; // sub-Gaussian constant; recorded, unused for
                         // Gaussian data

  void validate() const;
};

/// Vertex of a binary hypercube.
struct HypercubeTheta {
  std::vector<std::uint8_t> bits;

  static HypercubeTheta zeros(int d);
  static HypercubeTheta ones(int d);
  int dim() const { return static_cast<int>(bits.size()); }
};

enum class ModelKind { ToeplitzDecay, F11, F12, FStar, G2, Identity };

/// Specification of a true covariance matrix.
///
/// toeplitz_decay: unit diagonal, entries rho*|i-j|^-(alpha+1).
/// f11:   I + tau*a * sum of theta-selected single-row bands in the
///        leading 2k x 2k corner, k = floor(n^(1/(2 alpha+1))),
///        a = k^-(alpha+1); needs 2k <= p and theta of length k.
/// f12:   I with one diagonal entry (index_m >= 1) raised by
///        sqrt(tau*log(p1)/n), p1 = min(p, e^(n/2)); index_m = 0 is I.
/// fstar: I + tau/sqrt(n*p) * theta-selected rows reaching the right
///        edge; p even, theta of length p/2.
/// g2:    I + tau/sqrt(n) * theta-selected entries in the band
///        1 <= |i-j| <= k; theta of length k*p - k*(k+1)/2, bits
///        ordered row-major (i ascending, then j). k may be given
///        explicitly or left 0 to derive floor(n^(1/(2(alpha+1)))).
struct CovarianceModel {
  ModelKind kind = ModelKind::Identity;
  DecayClassParams params;
  int p = 1;
  int n = 0;           // sample size entering the family scalings
  double rho = 0.0;    // model correlation (toeplitz), distinct from rho_subg
  double tau = 0.0;    // perturbation scale for the families
  int k = 0;           // g2 band half-width; 0 derives from (n, alpha)
  HypercubeTheta theta;
  int index_m = 0;     // f12 member selector
};

SymmetricMatrix realize(const CovarianceModel& model);

/// floor(n^(1/(2 alpha + 1))), at least 1.
int f11_bandwidth(int n, double alpha);

/// min(p, e^(n/2)); real-valued, overflow-safe.
double f12_effective_dim(int p, int n);

/// k*p - k*(k+1)/2: the number of band positions above the diagonal.
int g2_hypercube_dim(int p, int k);

/// Direct family constructors used both by realize() and by the bounds
/// machinery, which needs them at explicit (k, a) without a sample size.
SymmetricMatrix toeplitz_decay_matrix(int p, double alpha, double rho);
SymmetricMatrix f11_matrix(int p, int k, double a, double tau,
                           const HypercubeTheta& theta);

struct MembershipReport {
  bool member = false;
  std::string violation;  // empty when member
};

/// Tail-decay class test: max_j sum_{|i-j|>c} |sigma_ij| <= M*c^-alpha
/// for every cutoff c in [1, p-1], plus lambda_max <= M0. Exact finite
/// sums with 1e-12 relative slack.
MembershipReport check_membership_f_alpha(const SymmetricMatrix& sigma,
                                          const DecayClassParams& params);

/// Entrywise decay class test: |sigma_ij| <= M1*|i-j|^-(alpha+1) off
/// the diagonal, plus lambda_max <= M0.
MembershipReport check_membership_g_alpha(const SymmetricMatrix& sigma,
                                          const DecayClassParams& params);

/// Smallest tail budget under which `sigma` passes the f-class tail
/// condition at the given alpha: max over cutoffs of tail(c)*c^alpha.
double min_tail_constant(const SymmetricMatrix& sigma, double alpha);

/// Reusable sampler: factors sigma once (Cholesky when PD, otherwise
/// eigendecomposition with near-zero eigenvalues in
/// [-1e-10*lambda_max, 0) clipped to 0), then draws X = factor * Z.
class GaussianSampler {
 public:
  explicit GaussianSampler(const SymmetricMatrix& sigma);

  int dim() const { return static_cast<int>(factor_.rows()); }

  /// n observations, deterministic in (sigma, n, seed, stream).
  SampleSet draw(int n, std::uint64_t seed, std::uint64_t stream = 0) const;

  const Eigen::MatrixXd& factor() const { return factor_; }

 private:
  Eigen::MatrixXd factor_;
};

/// One-shot draw of n mean-zero Gaussians with covariance sigma.
SampleSet sample_gaussian(const SymmetricMatrix& sigma, int n,
                          std::uint64_t seed);

const char* to_string(ModelKind kind);

}  // namespace covkit
