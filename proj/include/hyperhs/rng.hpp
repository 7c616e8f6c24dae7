#pragma once

// Deterministic, platform-independent random streams.
//
// Generator: xoshiro256++ (Blackman-Vigna), seeded through splitmix64. A
// stream is identified by (seed, stream_id); the two are expanded through
// independent splitmix64 chains and xored together, so distinct stream ids
// give decorrelated streams and identical (seed, stream_id) reproduce the
// exact same bit sequence on every platform.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace hyperhs::sampling {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}
}  // namespace detail

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) {
    std::uint64_t a = seed;
    std::uint64_t b = stream_id * 0xA0761D6478BD642FULL + 0x1ULL;
    for (auto& word : state_) {
      word = detail::splitmix64(a) ^ detail::splitmix64(b);
    }
    bool all_zero = true;
    for (auto word : state_) all_zero = all_zero && word == 0;
    if (all_zero) state_[0] = 0x9E3779B97F4A7C15ULL;
  }

  std::uint64_t next_u64() {
    auto& s = state_;
    const std::uint64_t result = detail::rotl(s[0] + s[3], 23) + s[0];
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = detail::rotl(s[3], 45);
    return result;
  }

  // Uniform on [0, 1), 53 significant bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // One standard normal draw (Box-Muller; the sine component is discarded so
  // the draw count per call is fixed).
  double normal() {
    const double u = 1.0 - uniform01();  // (0, 1], keeps the log finite
    const double v = uniform01();
    return std::sqrt(-2.0 * std::log(u)) *
           std::cos(2.0 * 3.141592653589793238462643 * v);
  }

  // Complex draw with independent standard normal real and imaginary parts,
  // i.e. E|z|^2 = 2. Both Box-Muller components are used.
  std::complex<double> complex_normal() {
    const double u = 1.0 - uniform01();
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double phi = 2.0 * 3.141592653589793238462643 * v;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::array<std::uint64_t, 4> state_;
};

}  // namespace hyperhs::sampling
