#include "skewlab/rational.hpp"

#include <cctype>
#include <ostream>

#include "skewlab/errors.hpp"

namespace skew {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string buf(s);
  if (!buf.empty() && buf[0] == '+') buf.erase(0, 1);
  return mpz_class(buf, 10);
}

}  // namespace

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_literal(text)) {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    return Rational(parse_integer(text));
  }
  auto num = text.substr(0, slash);
  auto den = text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-') {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  mpz_class d = parse_integer(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_integer(num), d);
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  if (digits < 1) digits = 1;
  if (is_zero()) return "0";
  mpq_class mag = ::abs(v_);

  // Choose a power-of-ten shift s with 10^(digits-1) <= mag * 10^s < 10^digits.
  mpz_class lo, hi;
  mpz_ui_pow_ui(lo.get_mpz_t(), 10, static_cast<unsigned long>(digits - 1));
  hi = lo * 10;
  long shift = 0;
  auto scaled = [&](long s) {
    mpq_class q = mag;
    mpz_class p10;
    if (s >= 0) {
      mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(s));
      q *= p10;
    } else {
      mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(-s));
      q /= p10;
    }
    return q;
  };
  // Rough start from the bit-length estimate, then settle exactly.
  long est = static_cast<long>(mpz_sizeinbase(mag.get_den().get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(mag.get_num().get_mpz_t(), 10)) + digits;
  shift = est;
  while (scaled(shift) >= hi) --shift;
  while (scaled(shift) < lo) ++shift;

  mpq_class q = scaled(shift);
  mpz_class n = q.get_num() / q.get_den();
  mpq_class frac = q - n;
  int c = cmp(frac, mpq_class(1, 2));
  if (c > 0 || (c == 0 && mpz_odd_p(n.get_mpz_t()))) n += 1;
  if (n == hi) {
    n = lo;
    --shift;
  }

  std::string body = n.get_str();  // exactly `digits` characters
  std::string out;
  long int_digits = static_cast<long>(body.size()) - shift;
  if (int_digits <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-int_digits), '0') + body;
  } else if (int_digits >= static_cast<long>(body.size())) {
    out = body + std::string(static_cast<std::size_t>(int_digits - static_cast<long>(body.size())), '0');
  } else {
    out = body.substr(0, static_cast<std::size_t>(int_digits)) + "." +
          body.substr(static_cast<std::size_t>(int_digits));
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return (sign() < 0 ? "-" : "") + out;
}

mpz_class Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return r;
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(v_))); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational r(1);
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace skew
