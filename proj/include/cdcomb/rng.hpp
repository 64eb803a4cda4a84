#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace cdcomb {

/// splitmix64 step; used to decorrelate substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic RNG wrapper. All samplers are written out explicitly
/// (mt19937_64 is fully specified by the standard, the distribution adaptors
/// in <random> are not), so identical seeds give identical streams on any
/// platform. Simulation code derives one substream per (seed, stream, rep)
/// triple and never shares streams across replications.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  static Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t rep = 0) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= 0x6a09e667f3bcc909ULL + stream;
    std::uint64_t b = splitmix64(s);
    s ^= 0xbb67ae8584caa73bULL + rep;
    std::uint64_t c = splitmix64(s);
    return Rng(a ^ (b * 0x9e3779b97f4a7c15ULL) ^ (c + stream * 0x100000001b3ULL + rep));
  }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on (0,1); never returns 0 or 1.
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (two uniforms per draw, no state).
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Standard double exponential (Laplace) draw.
  double laplace() {
    double u = uniform();
    return u <= 0.5 ? std::log(2.0 * u) : -std::log(2.0 * (1.0 - u));
  }

  double cauchy(double center, double scale) {
    return center + scale * std::tan(std::numbers::pi * (uniform() - 0.5));
  }

  /// Index in [0, n) via 128-bit multiply-shift.
  std::uint64_t uniform_index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(gen_()) * n) >> 64);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace cdcomb
