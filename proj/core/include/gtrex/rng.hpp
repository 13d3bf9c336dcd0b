#ifndef GTREX_RNG_HPP
#define GTREX_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace gtrex {

/// SplitMix64 scramble; bijective on 64-bit values.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent substream seed from (seed, tag). Substream seeds for
/// (repetition, node, bootstrap, ...) are obtained by folding the tags in one
/// at a time, so adding sibling streams never perturbs existing ones.
inline std::uint64_t fold_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (tag + 1)));
}

inline std::uint64_t fold_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  for (std::uint64_t t : tags) seed = fold_seed(seed, t);
  return seed;
}

/// Seeded random stream. Wraps std::mt19937_64 (fully specified by the
/// standard, so sequences are reproducible across platforms) and provides
/// draw primitives that do not depend on implementation-defined
/// std::*_distribution behavior.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Unbiased integer in [0, n). Requires n > 0.
  std::uint64_t uniform_below(std::uint64_t n) {
    // Lemire's multiply-shift with rejection on the low word.
    std::uint64_t x = gen_();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t t = (-n) % n;
      while (lo < t) {
        x = gen_();
        m = static_cast<__uint128_t>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform_real() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform_real(double a, double b) { return a + (b - a) * uniform_real(); }

  /// Standard normal via Box-Muller; the spare draw is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0,1] so the log is finite.
    double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = uniform_real();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// Random sign, +1 or -1.
  double sign() { return (gen_() >> 63) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gtrex

#endif  // GTREX_RNG_HPP
