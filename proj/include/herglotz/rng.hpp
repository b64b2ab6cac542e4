#pragma once

#include <cmath>
#include <cstdint>

namespace herglotz {

// Deterministic random stream (xoshiro256++ core, splitmix64 seeding).
//
// All distributions are implemented in-line rather than through
// <random> adaptors, so that a (seed, substream) pair produces
// bit-identical output on every platform and toolchain.  Monte-Carlo
// loops derive one substream per sample index; results are then
// independent of scheduling and worker count.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : key_(seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
  }

  // Child stream for sample/worker `index`; derivation is stateless.
  RngStream substream(std::uint64_t index) const {
    std::uint64_t mix = key_;
    mix = splitmix64_mix(mix ^ (0x9e3779b97f4a7c15ull + index));
    mix = splitmix64_mix(mix + index);
    return RngStream(mix);
  }

  std::uint64_t seed() const { return key_; }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Box-Muller without a cached spare; two uniforms per variate keeps
  // the stream position a pure function of the call count.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  double exponential(double rate) {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    return -std::log(u) / rate;
  }

  // Gamma(shape, 1) for shape >= 1 via Marsaglia-Tsang squeeze.
  double gamma(double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Chi_k = sqrt(chi-square_k); chi-square_k = 2 Gamma(k/2).
  double chi(double dof) { return std::sqrt(2.0 * gamma(0.5 * dof)); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  static std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    return splitmix64_mix(s);
  }

  std::uint64_t key_;
  std::uint64_t state_[4];
};

}  // namespace herglotz
