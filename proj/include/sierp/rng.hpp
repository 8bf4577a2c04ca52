#pragma once

#include <cstdint>

#include "sierp/rational.hpp"

namespace sierp {

/// SplitMix64: tiny, fast, and identical on every platform. Used for all
/// randomized suites so that a seed fully determines the output bytes.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform-ish value in [0, n). Modulo bias is irrelevant for suite
  /// sampling and keeps the stream platform-stable.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  long long int_in(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Random rational with numerator in [-max_abs_num, max_abs_num] and
  /// denominator in [1, max_den].
  Rational rational(long max_abs_num, long max_den) {
    const long long n = int_in(-max_abs_num, max_abs_num);
    const long long d = int_in(1, max_den);
    return Rational(static_cast<long>(n), static_cast<long>(d));
  }

 private:
  std::uint64_t state_;
};

}  // namespace sierp
