#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace stereogen {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Expand a root seed into an independent per-stage seed. Every stage of the
/// pipeline derives its randomness from the root seed through this.
inline std::uint64_t stage_seed(std::uint64_t root, std::string_view stage) {
  return splitmix64(root ^ fnv1a64(stage));
}

/// Small self-contained PRNG wrapper. Not std:: distributions: their output
/// is implementation-defined, and artifacts must be reproducible bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix64(seed ^ 0x5851f42d4c957f2dULL)) {}

  std::uint64_t next_u64() {
    state_ = splitmix64(state_);
    return state_;
  }

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_int(std::uint64_t bound) {
    // rejection sampling to avoid modulo bias
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via Box-Muller (one draw per call, spare cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double two_pi = 6.283185307179586476925286766559;
    spare_ = mag * std::sin(two_pi * u2);
    has_spare_ = true;
    return mag * std::cos(two_pi * u2);
  }

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(T& seq) {
    if (seq.size() < 2) return;
    for (std::size_t i = seq.size() - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform_int(i + 1));
      using std::swap;
      swap(seq[i], seq[j]);
    }
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace stereogen
