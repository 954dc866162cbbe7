#include "exactreach/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace exactreach {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class pow10(std::size_t exp) {
  mpz_class result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exp);
  return result;
}

// Number of decimal digits of a positive integer.
std::size_t digit_count(const mpz_class& v) {
  // sizeinbase may overestimate by one; correct by comparison.
  std::size_t d = mpz_sizeinbase(v.get_mpz_t(), 10);
  if (d > 1 && v < pow10(d - 1)) --d;
  return d;
}

// floor(n / d) with round-half-up applied to the remainder. n, d > 0.
mpz_class div_round_nearest(const mpz_class& n, const mpz_class& d) {
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (2 * r >= d) ++q;
  return q;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) {
  if (q_.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  mpz_class num, den;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view ns = s.substr(0, slash);
    std::string_view ds = s.substr(slash + 1);
    if (!all_digits(ns) || !all_digits(ds)) {
      throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
    }
    num = mpz_class(std::string(ns), 10);
    den = mpz_class(std::string(ds), 10);
    if (den == 0) throw std::invalid_argument("fraction with zero denominator");
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view is = s.substr(0, dot);
    std::string_view fs = s.substr(dot + 1);
    if (is.empty() && fs.empty()) throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    if ((!is.empty() && !all_digits(is)) || (!fs.empty() && !all_digits(fs))) {
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    }
    std::string joined = std::string(is) + std::string(fs);
    num = joined.empty() ? mpz_class(0) : mpz_class(joined, 10);
    den = pow10(fs.size());
  } else {
    if (!all_digits(s)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    num = mpz_class(std::string(s), 10);
    den = 1;
  }
  if (negative) num = -num;
  return Rational(num, den);
}

std::string Rational::fraction_string() const {
  if (den() == 1) return num_string();
  return num_string() + "/" + den_string();
}

std::string Rational::decimal_string(int significant_digits) const {
  if (significant_digits < 1) significant_digits = 1;
  if (is_zero()) return "0";

  const bool negative = sign() < 0;
  mpz_class n = abs(num());
  const mpz_class& d = den();

  // Decimal exponent e with 10^e <= n/d < 10^{e+1}.
  long e;
  if (n >= d) {
    e = static_cast<long>(digit_count(n / d)) - 1;
  } else {
    long k = 1;
    while (n * pow10(k) < d) ++k;
    e = -k;
  }

  // Round n/d to `significant_digits` digits: t = round(n * 10^{sig-1-e} / d).
  long shift = significant_digits - 1 - e;
  mpz_class t = shift >= 0 ? div_round_nearest(n * pow10(shift), d)
                           : div_round_nearest(n, d * pow10(-shift));
  if (t == pow10(significant_digits)) {  // rounded up to the next power of ten
    t /= 10;
    ++e;
  }

  std::string digits = t.get_str();
  std::string out;
  if (e >= 0) {
    std::string int_part = digits.substr(0, e + 1);
    std::string frac_part = digits.substr(e + 1);
    while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
    out = frac_part.empty() ? int_part : int_part + "." + frac_part;
  } else {
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    out = "0." + std::string(-e - 1, '0') + digits;
  }
  return negative ? "-" + out : out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.fraction_string();
}

}  // namespace exactreach
