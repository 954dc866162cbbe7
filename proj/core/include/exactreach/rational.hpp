#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace exactreach {

/**
 * Arbitrary-precision rational number.
 *
 * Values are always stored in canonical form: the denominator is positive and
 * gcd(|numerator|, denominator) = 1. Every constructor and operator
 * re-establishes the canonical form, so equality is a plain comparison of the
 * stored integers. All arithmetic is exact; there is no rounding anywhere
 * except in the explicit conversions to double and to decimal strings.
 */
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long value) : q_(value) {}  // NOLINT: implicit by design, mirrors integer literals
  Rational(long num, long den);
  explicit Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class q);

  /// Parses "p/q", "p" or a decimal literal such as "0.25". Decimal literals
  /// are converted exactly (d fractional digits become numerator/10^d);
  /// binary floating point is never involved. Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }
  std::string num_string() const { return q_.get_num().get_str(); }
  std::string den_string() const { return q_.get_den().get_str(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }

  /// Nearest double (GMP round-to-nearest conversion).
  double to_double() const { return q_.get_d(); }

  /// "p/q", or just "p" for integers.
  std::string fraction_string() const;

  /// Exact decimal rendering, round-to-nearest at the given number of
  /// significant digits, trailing zeros trimmed ("1/2" -> "0.5").
  std::string decimal_string(int significant_digits = 17) const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  friend Rational abs(const Rational& a) { return Rational(mpq_class(abs(a.q_))); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class q_;
};

}  // namespace exactreach
