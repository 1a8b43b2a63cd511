#include "covkit/rng.hpp"

#include <cmath>

namespace covkit {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  // seed_seq's expansion is fully specified by the standard, so the
  // derived state is portable.
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}
}  // namespace

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t stream)
    : engine_(make_engine(seed, stream)) {}

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0,1] keeps the log finite; u2 in [0,1).
  const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = kTwoPi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

void NormalStream::fill(double* dst, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) dst[i] = next();
}

}  // namespace covkit
