#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fisherid {

// Counter-based generator: the SplitMix64 finalizer applied to an affine walk
// of a (seed, stream) key. Output i of stream s is
//
//   mix(base(seed, s) + i * golden)
//
// so values are a pure function of (seed, stream, counter) and any point of a
// dataset can own its private substream (stream = point index by convention).
// That keeps generated datasets bit-reproducible no matter how generation is
// ordered or parallelised. Version tag below is recorded in dataset metadata;
// bump it if the scheme ever changes.
inline constexpr const char* kRngVersion = "smc64/1";

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(mix(seed + kGolden) ^ mix(stream * kGolden + kStreamSalt)) {}

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t at(std::uint64_t counter) const { return mix(base_ + counter * kGolden); }

  std::uint64_t next_u64() { return at(counter_++); }

  // Uniform on [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1], safe as a log argument.
  double uniform_positive() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound), bound >= 1 (Lemire multiply-shift).
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  // One Box-Muller pair of independent standard normals (consumes two draws).
  void normal_pair(double& z0, double& z1) {
    const double u1 = uniform_positive();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    z0 = r * std::cos(theta);
    z1 = r * std::sin(theta);
  }

  std::uint64_t counter() const { return counter_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kStreamSalt = 0x6a09e667f3bcc909ULL;

  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace fisherid
