#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace covkit {

/// Generator pipeline id, recorded in run manifests so a report can be
/// tied to the exact sampling algorithm that produced it.
inline constexpr const char* kRngAlgorithm = "mt19937_64+box-muller";

/// Deterministic stream of independent N(0,1) draws. Streams are keyed
/// by (seed, stream): the same key replays the identical sequence on
/// any platform; distinct keys give decorrelated streams. The Gaussian
/// transform is a fixed Box-Muller, not std::normal_distribution,
/// whose output is implementation-defined.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed, std::uint64_t stream = 0);

  /// One N(0,1) draw.
  double next();

  void fill(double* dst, std::size_t count);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace covkit
