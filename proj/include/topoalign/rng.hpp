#pragma once

#include <cmath>
#include <cstdint>

namespace topoalign {

// Counter-based generator built on the splitmix64 finalizer
// (constants from Steele, Lea & Flood's SplittableRandom).
// Word i of stream (seed, stream) depends only on (seed, stream, i),
// so substreams can be drawn out of order and in parallel.

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stable derivation of per-trial / per-step seeds from a master seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + golden_gamma * (index + 1));
}

class counter_rng {
 public:
  explicit counter_rng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix64(seed + golden_gamma) ^ mix64(stream * golden_gamma + 0x632be59bd9b4e019ULL)) {}

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * golden_gamma); }

  // Uniform on [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Standard normal via Box-Muller; the spare value is cached.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace topoalign
