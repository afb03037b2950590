#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string_view>

namespace polyharmonia {

// Self-contained deterministic randomness. The standard <random> engines are
// portable but the distributions are not; campaigns promise bit-identical
// streams for a fixed seed, so both the generator (splitmix64) and the
// normal transform (Box-Muller) are pinned here.

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace detail

/// Counter-based seed splitting: child streams never perturb each other when
/// cases are added or reordered.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  return detail::mix64(base ^ detail::mix64(salt));
}

inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
  return derive_seed(base, detail::fnv1a(tag));
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(detail::mix64(seed)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  /// Uniform in (0, 1].
  double next_unit() { return (double((next_u64() >> 11)) + 1.0) * 0x1p-53; }

  /// Uniform in [lo, hi).
  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * double(next_u64() >> 11) * 0x1p-53;
  }

  /// Standard normal via Box-Muller (two uniforms per draw).
  double next_normal() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  std::complex<double> next_complex_normal() {
    const double re = next_normal();
    const double im = next_normal();
    return {re, im};
  }

 private:
  std::uint64_t state_;
};

}  // namespace polyharmonia
