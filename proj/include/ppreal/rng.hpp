#pragma once

#include <cstdint>

namespace ppr {

/// Deterministic 64-bit splittable generator (the splitmix64 mixer), chosen
/// so identical seeds reproduce identical streams across platforms.
///
/// Algorithm: the state advances by the additive constant 0x9e3779b97f4a7c15;
/// the output is the new state passed through
///   z ^= z >> 30; z *= 0xbf58476d1ce4e5b9;
///   z ^= z >> 27; z *= 0x94d049bb133111eb;
///   z ^= z >> 31.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Independent child stream, seeded from this stream.
  SplitMix64 split() { return SplitMix64(next()); }

private:
  std::uint64_t state_;
};

}  // namespace ppr
