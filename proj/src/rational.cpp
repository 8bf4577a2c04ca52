#include "sierp/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace sierp {

namespace {

mpq_class canonical(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw std::domain_error("Rational: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();  // reduces and makes the denominator positive
  return q;
}

bool looks_like_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den)
    : v_(canonical(Integer(num), Integer(den))) {}

Rational::Rational(const Integer& num, const Integer& den)
    : v_(canonical(num, den)) {}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!looks_like_integer(text))
      throw std::invalid_argument("Rational::parse: bad integer '" + text + "'");
    return Rational(Integer(text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!looks_like_integer(num) || !looks_like_integer(den))
    throw std::invalid_argument("Rational::parse: bad rational '" + text + "'");
  return Rational(Integer(num), Integer(den));
}

std::string Rational::to_string() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::to_decimal(std::size_t digits) const {
  Integer n = v_.get_num();
  const Integer d = v_.get_den();
  const bool neg = sgn(n) < 0;
  if (neg) n = -n;
  Integer whole = n / d;
  Integer rem = n % d;
  std::string out = neg && (sgn(whole) != 0 || sgn(rem) != 0) ? "-" : "";
  out += whole.get_str();
  if (digits > 0) {
    out += '.';
    for (std::size_t i = 0; i < digits; ++i) {
      rem *= 10;
      Integer digit = rem / d;
      rem %= d;
      out += static_cast<char>('0' + digit.get_si());
    }
  }
  return out;
}

Rational Rational::pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  const bool invert = e < 0;
  const unsigned long k = invert ? static_cast<unsigned long>(-e)
                                 : static_cast<unsigned long>(e);
  if (invert && base.is_zero())
    throw std::domain_error("Rational::pow: 0 to a negative power");
  Integer pn, pd;
  mpz_pow_ui(pn.get_mpz_t(), base.num().get_mpz_t(), k);
  mpz_pow_ui(pd.get_mpz_t(), base.den().get_mpz_t(), k);
  // num/den coprime implies num^k/den^k coprime; sign already on num.
  mpq_class q;
  if (invert) {
    if (sgn(pn) < 0) { pn = -pn; pd = -pd; }
    q = mpq_class(pd, pn);
  } else {
    q = mpq_class(pn, pd);
  }
  q.canonicalize();
  return raw(std::move(q));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("Rational: division by zero");
  return Rational::raw(mpq_class(a.v_ / b.v_));
}

}  // namespace sierp
