#pragma once

#include <cmath>
#include <cstdint>

namespace qoc {

/// SplitMix64 finalizer. Good avalanche, cheap, and identical on every
/// platform we target, which is what the reproducibility contract needs.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based random stream. Streams are derived by hashing, never by
/// jumping, so any (seed, member, generation, purpose) tuple names the same
/// sequence regardless of evaluation order or worker count.
class RngStream {
 public:
  explicit RngStream(std::uint64_t state) : state_(state) {}

  static RngStream derive(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = mix64(master ^ 0x51a7c0d5b9e46fd3ULL);
    s = mix64(s ^ mix64(a));
    s = mix64(s ^ mix64(b ^ 0x7b14de0996842fc1ULL));
    s = mix64(s ^ mix64(c ^ 0x2ce1f986a73d05bbULL));
    return RngStream(s);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    // 64-bit multiply-shift; bias is negligible for the n used here.
    return static_cast<std::uint64_t>(
        (static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

  /// Poisson draw by Knuth's product method; fine for the means used here
  /// (at most a few hundred).
  int poisson(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

 private:
  std::uint64_t state_;
};

}  // namespace qoc
