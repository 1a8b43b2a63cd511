#pragma once

#include <string>

#include "covkit/models.hpp"
#include "covkit/sym_matrix.hpp"

namespace covkit {

/// Number of differing bits. Lengths must match.
int hamming(const HypercubeTheta& theta, const HypercubeTheta& theta_prime);

/// Two mean-zero Gaussian hypotheses observed n times each.
struct GaussianPair {
  SymmetricMatrix sigma0;
  SymmetricMatrix sigma1;
  int n = 1;
};

/// KL divergence K(P1 | P0) of the n-fold products:
/// (n/2) [tr(S1 S0^-1) - log det(S1 S0^-1) - p]. Both matrices must be
/// positive definite.
double gaussian_kl(const GaussianPair& pair);

/// Certified lower bound on the testing affinity |P0 ^ P1|:
/// max(0, 1 - sqrt(K/2)) via the KL bound on L1 distance.
double pinsker_affinity_lower(const GaussianPair& pair);

/// Closed-form chi-square distance between the uniform mixture of the
/// diagonal-bump family and its null, with the affinity floor it
/// implies. Requires p1 >= 1, 0 < tau < 1, and tau*log(p1) < n.
struct ChiSquareAffinity {
  double chi_square = 0.0;      // p1^-1 [(1 - tau log(p1)/n)^(-n/2) - 1]
  double affinity_lower = 0.0;  // max(0, 1 - sqrt(chi_square)/2)
};
ChiSquareAffinity f12_chi_square_affinity(double p1, int n, double tau);

/// Exact squared operator-norm distance between two corner-family
/// members over their Hamming distance. Built at p = 2k (padding with
/// identity rows changes nothing). Identical vertices are rejected.
double f11_separation(const HypercubeTheta& theta,
                      const HypercubeTheta& theta_prime, int k, double a,
                      double tau);

/// Three-factor hypercube bound: separation-per-bit x dim/2 x affinity,
/// divided by 4 for the squared loss. Zero factors give 0; negative
/// factors or affinity > 1 are rejected.
struct AssouadBoundInputs {
  std::string family;  // "f11" | "g2" | "fstar"
  double separation_per_bit = 0.0;
  int hypercube_dim = 0;
  double affinity_floor = 0.0;
};
double assouad_lower_bound(const AssouadBoundInputs& inputs);

/// Two-point bound: r_min/2 x affinity. r_min >= 0, affinity in [0,1].
double lecam_lower_bound(double r_min, double affinity);

/// A fully assembled lower-bound configuration: the inputs that went
/// into the generic bound plus the value.
struct AssembledBound {
  std::string family;
  std::string loss;  // "operator" or "frobenius_per_p"
  int n = 0;
  int p = 0;
  double alpha = 0.0;
  double tau = 0.0;
  int k = 0;                      // bandwidth, when the family has one
  double a_scale = 0.0;           // per-entry scale, when meaningful
  double separation_per_bit = 0.0;  // r_min for the two-point family
  int hypercube_dim = 0;            // 0 for the two-point family
  double affinity_floor = 0.0;
  double chi_square = 0.0;  // only the two-point family fills this
  double bound = 0.0;
};

/// Corner family under operator loss: k = floor(n^(1/(2 alpha+1))),
/// a = k^-(alpha+1), separation tau^2 (k/2) a^2 per bit, affinity
/// floored by Pinsker over all single-bit flips from the all-zeros and
/// all-ones vertices.
AssembledBound assouad_f11_bound(int n, int p, double alpha, double tau);

/// Banded family under Frobenius-per-dimension loss: separation
/// tau^2/(n p) per bit over k p - k(k+1)/2 bits. Pass k = 0 to derive
/// floor(n^(1/(2(alpha+1)))).
AssembledBound assouad_g2_bound(int n, int p, double alpha, double tau,
                                int k = 0);

/// Full-width family under operator loss targeting the parametric
/// p/n scaling: separation tau^2/(4n) per bit over p/2 bits.
AssembledBound assouad_fstar_bound(int n, int p, double tau);

/// Diagonal-bump two-point bound: r_min = tau log(p1)/(2n) with the
/// chi-square affinity floor.
AssembledBound lecam_f12_bound(int n, int p, double tau);

}  // namespace covkit
