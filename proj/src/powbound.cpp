#include "sierp/powbound.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace sierp {

namespace {

constexpr mpfr_prec_t kPrec = 256;

class Mpfr {
 public:
  Mpfr() { mpfr_init2(x_, kPrec); }
  ~Mpfr() { mpfr_clear(x_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }

 private:
  mpfr_t x_;
};

// Exact rational from a finite mpfr value (mantissa * 2^exponent).
Rational to_rational(const Mpfr& x) {
  if (mpfr_zero_p(x.get())) return 0;
  Integer mantissa;
  const mpfr_exp_t e = mpfr_get_z_2exp(mantissa.get_mpz_t(), x.get());
  return Rational(mantissa) * Rational::pow2(static_cast<long>(e));
}

struct ExponentBracket {
  Mpfr lo, hi;  // rational-exponent bracket: lo <= alpha <= hi
};

// alpha = log(a/b) / (c * log 2), bracketed with directed rounding.
void log_ratio_over_log2(ExponentBracket& out, unsigned long a,
                         unsigned long b, unsigned long c) {
  Mpfr num_lo, num_hi, den_lo, den_hi;
  mpfr_set_ui(num_lo.get(), a, MPFR_RNDD);
  mpfr_div_ui(num_lo.get(), num_lo.get(), b, MPFR_RNDD);
  mpfr_log(num_lo.get(), num_lo.get(), MPFR_RNDD);
  mpfr_set_ui(num_hi.get(), a, MPFR_RNDU);
  mpfr_div_ui(num_hi.get(), num_hi.get(), b, MPFR_RNDU);
  mpfr_log(num_hi.get(), num_hi.get(), MPFR_RNDU);
  mpfr_const_log2(den_lo.get(), MPFR_RNDD);
  mpfr_mul_ui(den_lo.get(), den_lo.get(), c, MPFR_RNDD);
  mpfr_const_log2(den_hi.get(), MPFR_RNDU);
  mpfr_mul_ui(den_hi.get(), den_hi.get(), c, MPFR_RNDU);
  mpfr_div(out.lo.get(), num_lo.get(), den_hi.get(), MPFR_RNDD);
  mpfr_div(out.hi.get(), num_hi.get(), den_lo.get(), MPFR_RNDU);
}

// Upper bound of q^alpha for q > 0 and alpha inside the positive bracket.
Rational pow_upper(const Rational& q, const ExponentBracket& alpha) {
  Mpfr base, result;
  mpq_class mq(q.num(), q.den());
  mpfr_set_q(base.get(), mq.get_mpq_t(), MPFR_RNDU);
  // q >= 1: q^a increasing in both base and exponent.
  // q <  1: increasing in base, decreasing in exponent.
  const bool ge_one = q >= Rational(1);
  mpfr_pow(result.get(), base.get(),
           ge_one ? alpha.hi.get() : alpha.lo.get(), MPFR_RNDU);
  return to_rational(result);
}

const ExponentBracket& half_dw_minus_dh() {
  // (d_w - d_h) / 2 = log(5/3) / (2 log 2)
  static ExponentBracket* bracket = [] {
    auto* b = new ExponentBracket;
    log_ratio_over_log2(*b, 5, 3, 2);
    return b;
  }();
  return *bracket;
}

const ExponentBracket& walk_dimension() {
  // d_w = log 5 / log 2
  static ExponentBracket* bracket = [] {
    auto* b = new ExponentBracket;
    log_ratio_over_log2(*b, 5, 1, 1);
    return b;
  }();
  return *bracket;
}

}  // namespace

bool dyadic_power(const Rational& r, long* k) {
  if (r.sign() <= 0) return false;
  const Integer num = r.num();
  const Integer den = r.den();
  const auto is_pow2 = [](const Integer& z) {
    return mpz_scan1(z.get_mpz_t(), 0) == mpz_sizeinbase(z.get_mpz_t(), 2) - 1;
  };
  if (!is_pow2(num) || !is_pow2(den)) return false;
  const long en = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2) - 1);
  const long ed = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2) - 1);
  if (en != 0 && ed != 0) return false;  // canonical form: one side is 1
  if (k) *k = en - ed;
  return true;
}

Rational dist_pow_upper(const Rational& d2) {
  if (d2.sign() < 0)
    throw std::invalid_argument("dist_pow_upper: negative squared distance");
  if (d2.is_zero()) return 0;
  long k = 0;
  if (dyadic_power(d2, &k) && k % 2 == 0)
    return Rational::pow(Rational(5, 3), k / 2);  // d = 2^(k/2) exactly
  return pow_upper(d2, half_dw_minus_dh());
}

Rational radius_pow_upper(const Rational& r) {
  if (r.sign() <= 0)
    throw std::invalid_argument("radius_pow_upper: radius must be positive");
  long k = 0;
  if (dyadic_power(r, &k)) return Rational::pow(Rational(5), k);
  return pow_upper(r, walk_dimension());
}

}  // namespace sierp
