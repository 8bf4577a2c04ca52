#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <string>
#include <utility>

namespace sierp {

using Integer = mpz_class;

/// Exact rational scalar: always in lowest terms, denominator > 0.
/// All arithmetic is exact; there is no implicit floating-point anywhere.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}                   // NOLINT: implicit by design
  Rational(long n) : v_(mpz_class(n)) {}       // NOLINT
  explicit Rational(const Integer& n) : v_(n) {}
  Rational(long num, long den);
  Rational(const Integer& num, const Integer& den);

  /// Parses "num/den" or a bare integer. Throws std::invalid_argument on
  /// malformed input or a zero denominator.
  static Rational parse(const std::string& text);

  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }

  /// Always renders as "num/den", including integral values ("3/1").
  std::string to_string() const;

  /// Truncated fixed-point decimal rendering (lossy, for CSV/diagnostics).
  std::string to_decimal(std::size_t digits = 12) const;

  double to_double() const { return v_.get_d(); }

  /// base^e for signed integer e; throws std::domain_error on 0^negative.
  static Rational pow(const Rational& base, long e);
  static Rational pow2(long e) { return pow(Rational(2), e); }
  static Rational pow3(long e) { return pow(Rational(3), e); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(const Rational& a, const Rational& b) {
    return raw(mpq_class(a.v_ + b.v_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return raw(mpq_class(a.v_ - b.v_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return raw(mpq_class(a.v_ * b.v_));
  }
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return raw(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t());
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Rational abs(const Rational& a) {
    return a.sign() < 0 ? -a : a;
  }

 private:
  struct RawTag {};
  Rational(RawTag, mpq_class q) : v_(std::move(q)) {}
  // Wraps an mpq that is already canonical (arithmetic on canonical
  // operands stays canonical).
  static Rational raw(mpq_class q) { return Rational(RawTag{}, std::move(q)); }

  mpq_class v_;
};

inline const Rational& min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}
inline const Rational& max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}
inline Rational square(const Rational& a) { return a * a; }

}  // namespace sierp
