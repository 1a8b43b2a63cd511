#include "covkit/boundslab.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "covkit/matcore.hpp"

namespace covkit {

int hamming(const HypercubeTheta& theta, const HypercubeTheta& theta_prime) {
  if (theta.dim() != theta_prime.dim())
    throw InvalidInput(fmt::format("hypercube lengths differ: {} vs {}",
                                   theta.dim(), theta_prime.dim()));
  int count = 0;
  for (std::size_t i = 0; i < theta.bits.size(); ++i)
    count += theta.bits[i] != theta_prime.bits[i];
  return count;
}

namespace {

Eigen::MatrixXd pd_factor(const SymmetricMatrix& sigma, const char* which) {
  try {
    return cholesky(sigma);
  } catch (const NotPositiveDefinite& err) {
    throw InvalidInput(
        fmt::format("{} is not positive definite ({})", which, err.what()));
  }
}

double log_det_from_factor(const Eigen::MatrixXd& l) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) sum += std::log(l(i, i));
  return 2.0 * sum;
}

}  // namespace

double gaussian_kl(const GaussianPair& pair) {
  if (pair.sigma0.dim() != pair.sigma1.dim())
    throw InvalidInput(fmt::format("dimension mismatch: {} vs {}",
                                   pair.sigma0.dim(), pair.sigma1.dim()));
  if (pair.n < 1)
    throw InvalidInput(fmt::format("replication count must be >= 1, got {}", pair.n));
  const int p = pair.sigma0.dim();
  const Eigen::MatrixXd l0 = pd_factor(pair.sigma0, "sigma0");
  const Eigen::MatrixXd l1 = pd_factor(pair.sigma1, "sigma1");
  // tr(S1 S0^-1) = |L0^-1 L1|_F^2 with S1 = L1 L1^T.
  const Eigen::MatrixXd w =
      l0.triangularView<Eigen::Lower>().solve(l1);
  const double trace = w.squaredNorm();
  const double logdet = log_det_from_factor(l1) - log_det_from_factor(l0);
  const double kl = 0.5 * pair.n * (trace - logdet - p);
  return std::max(0.0, kl);
}

double pinsker_affinity_lower(const GaussianPair& pair) {
  const double kl = gaussian_kl(pair);
  return std::max(0.0, 1.0 - std::sqrt(0.5 * kl));
}

ChiSquareAffinity f12_chi_square_affinity(double p1, int n, double tau) {
  if (!(p1 >= 1.0))
    throw InvalidInput(fmt::format("p1 must be >= 1, got {}", p1));
  if (n < 1) throw InvalidInput(fmt::format("n must be >= 1, got {}", n));
  if (!(tau > 0.0) || !(tau < 1.0))
    throw InvalidInput(fmt::format("tau must be in (0,1), got {}", tau));
  const double x = tau * std::log(p1) / n;
  if (!(x < 1.0))
    throw InvalidInput(
        fmt::format("tau*log(p1)/n must be < 1, got {}", x));
  ChiSquareAffinity out;
  out.chi_square = (std::pow(1.0 - x, -0.5 * n) - 1.0) / p1;
  out.affinity_lower = std::max(0.0, 1.0 - 0.5 * std::sqrt(out.chi_square));
  return out;
}

double f11_separation(const HypercubeTheta& theta,
                      const HypercubeTheta& theta_prime, int k, double a,
                      double tau) {
  const int h = hamming(theta, theta_prime);
  if (h == 0) throw InvalidInput("identical vertices: Hamming distance is 0");
  const int p = 2 * k;
  const SymmetricMatrix s0 = f11_matrix(p, k, a, tau, theta);
  const SymmetricMatrix s1 = f11_matrix(p, k, a, tau, theta_prime);
  const double norm = operator_norm(s0 - s1);
  return norm * norm / h;
}

double assouad_lower_bound(const AssouadBoundInputs& inputs) {
  if (inputs.separation_per_bit < 0.0)
    throw InvalidInput(fmt::format("separation must be >= 0, got {}",
                                   inputs.separation_per_bit));
  if (inputs.hypercube_dim < 0)
    throw InvalidInput(
        fmt::format("hypercube dimension must be >= 0, got {}", inputs.hypercube_dim));
  if (inputs.affinity_floor < 0.0 || inputs.affinity_floor > 1.0)
    throw InvalidInput(
        fmt::format("affinity must be in [0,1], got {}", inputs.affinity_floor));
  // Squared loss: the separation enters through d^2, so the assembled
  // product carries a 1/2^2.
  return inputs.separation_per_bit * (0.5 * inputs.hypercube_dim) *
         inputs.affinity_floor / 4.0;
}

double lecam_lower_bound(double r_min, double affinity) {
  if (r_min < 0.0)
    throw InvalidInput(fmt::format("r_min must be >= 0, got {}", r_min));
  if (affinity < 0.0 || affinity > 1.0)
    throw InvalidInput(fmt::format("affinity must be in [0,1], got {}", affinity));
  return 0.5 * r_min * affinity;
}

namespace {

// Smallest Pinsker affinity across single-bit flips of the given base
// vertices. `make` builds the covariance at a vertex; `positions`
// selects which bits to flip (empty = all).
double probe_affinity_floor(
    const std::function<SymmetricMatrix(const HypercubeTheta&)>& make, int dim,
    int n, const std::vector<int>& positions) {
  std::vector<int> probe = positions;
  if (probe.empty())
    for (int i = 0; i < dim; ++i) probe.push_back(i);
  double floor = 1.0;
  for (const HypercubeTheta& base :
       {HypercubeTheta::zeros(dim), HypercubeTheta::ones(dim)}) {
    const SymmetricMatrix sigma_base = make(base);
    for (int pos : probe) {
      HypercubeTheta flipped = base;
      flipped.bits[static_cast<std::size_t>(pos)] ^= 1;
      GaussianPair pair{sigma_base, make(flipped), n};
      floor = std::min(floor, pinsker_affinity_lower(pair));
    }
  }
  return floor;
}

std::vector<int> sparse_probe_positions(int dim) {
  if (dim <= 3) {
    std::vector<int> all;
    for (int i = 0; i < dim; ++i) all.push_back(i);
    return all;
  }
  return {0, dim / 2, dim - 1};
}

}  // namespace

AssembledBound assouad_f11_bound(int n, int p, double alpha, double tau) {
  if (!(tau >= 0.0)) throw InvalidInput("tau must be >= 0");
  const int k = f11_bandwidth(n, alpha);
  if (2 * k > p)
    throw InvalidInput(
        fmt::format("family needs 2k <= p, got k={} p={}", k, p));
  const double a = std::pow(k, -(alpha + 1.0));

  AssembledBound out;
  out.family = "f11";
  out.loss = "operator";
  out.n = n;
  out.p = p;
  out.alpha = alpha;
  out.tau = tau;
  out.k = k;
  out.a_scale = a;
  out.separation_per_bit = tau * tau * (0.5 * k) * a * a;
  out.hypercube_dim = k;
  out.affinity_floor = probe_affinity_floor(
      [&](const HypercubeTheta& theta) {
        return f11_matrix(2 * k, k, a, tau, theta);
      },
      k, n, {});
  AssouadBoundInputs inputs{out.family, out.separation_per_bit,
                            out.hypercube_dim, out.affinity_floor};
  out.bound = assouad_lower_bound(inputs);
  return out;
}

AssembledBound assouad_g2_bound(int n, int p, double alpha, double tau, int k) {
  if (!(tau >= 0.0)) throw InvalidInput("tau must be >= 0");
  if (n < 2) throw InvalidInput(fmt::format("n must be >= 2, got {}", n));
  if (k == 0) {
    if (!(alpha > 0.0)) throw InvalidInput("alpha must be > 0");
    k = std::clamp(static_cast<int>(std::floor(
                       std::pow(n, 1.0 / (2.0 * (alpha + 1.0))) + 1e-9)),
                   1, p - 1);
  }
  const int dim = g2_hypercube_dim(p, k);

  CovarianceModel model;
  model.kind = ModelKind::G2;
  model.p = p;
  model.n = n;
  model.tau = tau;
  model.k = k;

  AssembledBound out;
  out.family = "g2";
  out.loss = "frobenius_per_p";
  out.n = n;
  out.p = p;
  out.alpha = alpha;
  out.tau = tau;
  out.k = k;
  out.a_scale = tau / std::sqrt(static_cast<double>(n));
  out.separation_per_bit = tau * tau / (static_cast<double>(n) * p);
  out.hypercube_dim = dim;
  out.affinity_floor = probe_affinity_floor(
      [&](const HypercubeTheta& theta) {
        CovarianceModel m = model;
        m.theta = theta;
        return realize(m);
      },
      dim, n, sparse_probe_positions(dim));
  AssouadBoundInputs inputs{out.family, out.separation_per_bit,
                            out.hypercube_dim, out.affinity_floor};
  out.bound = assouad_lower_bound(inputs);
  return out;
}

AssembledBound assouad_fstar_bound(int n, int p, double tau) {
  if (!(tau >= 0.0)) throw InvalidInput("tau must be >= 0");
  if (p < 2 || p % 2 != 0)
    throw InvalidInput(fmt::format("family needs even p >= 2, got {}", p));
  if (n < 2) throw InvalidInput(fmt::format("n must be >= 2, got {}", n));
  const int dim = p / 2;

  CovarianceModel model;
  model.kind = ModelKind::FStar;
  model.p = p;
  model.n = n;
  model.tau = tau;

  AssembledBound out;
  out.family = "fstar";
  out.loss = "operator";
  out.n = n;
  out.p = p;
  out.tau = tau;
  out.a_scale = tau / std::sqrt(static_cast<double>(n) * p);
  out.separation_per_bit = tau * tau / (4.0 * n);
  out.hypercube_dim = dim;
  out.affinity_floor = probe_affinity_floor(
      [&](const HypercubeTheta& theta) {
        CovarianceModel m = model;
        m.theta = theta;
        return realize(m);
      },
      dim, n, sparse_probe_positions(dim));
  AssouadBoundInputs inputs{out.family, out.separation_per_bit,
                            out.hypercube_dim, out.affinity_floor};
  out.bound = assouad_lower_bound(inputs);
  return out;
}

AssembledBound lecam_f12_bound(int n, int p, double tau) {
  const double p1 = f12_effective_dim(p, n);
  if (!(p1 > 1.0))
    throw InvalidInput(
        fmt::format("two-point family needs p1 > 1, got p1={} (p={})", p1, p));
  const ChiSquareAffinity chi = f12_chi_square_affinity(p1, n, tau);

  AssembledBound out;
  out.family = "f12";
  out.loss = "operator";
  out.n = n;
  out.p = p;
  out.tau = tau;
  out.separation_per_bit = 0.5 * tau * std::log(p1) / n;  // r_min
  out.affinity_floor = chi.affinity_lower;
  out.chi_square = chi.chi_square;
  out.bound = lecam_lower_bound(out.separation_per_bit, out.affinity_floor);
  return out;
}

}  // namespace covkit
