#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace gramspec {

/// splitmix64 stream. Chosen because the algorithm is fully specified in a
/// few lines, so any language can replicate the exact sample streams:
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
///   z = (z ^ z>>27) * 0x94D049BB133111EB
///   output = z ^ z>>31
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on (0, 1]: ((bits >> 11) + 1) * 2^-53.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double next_uniform(double lo, double hi) { return lo + (hi - lo) * (next_unit() - 0x1.0p-53); }

  /// Standard normal via Box-Muller on two consecutive uniforms.
  double next_gaussian() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::vector<double> gaussian_vector(std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = next_gaussian();
    return v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace gramspec
