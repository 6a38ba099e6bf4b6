#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace qdc {

// Exact ratio of arbitrary-precision integers, always in lowest terms with a
// positive denominator. Zero is 0/1.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I n) : value_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)

  Rational(const mpz_class& n) : value_(n) {}  // NOLINT(google-explicit-constructor)

  Rational(const mpz_class& num, const mpz_class& den);

  // Accepts "a", "a/b" (optional sign on a). Throws PreconditionError on
  // malformed input or a zero denominator.
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  // Integer power; negative exponents invert (PoleError on 0^negative).
  Rational pow(long e) const;
  Rational inverse() const;
  Rational abs() const;

  // Gauss' symbol [x] and fractional part {x} = x - [x].
  mpz_class floor() const;
  Rational frac() const;

  double to_double() const { return value_.get_d(); }

  // Always "num/den", including integers ("7/1").
  std::string to_string() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit Rational(mpq_class v) : value_(std::move(v)) {}

  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

mpz_class binomial(long n, long k);
mpz_class factorial(long n);

}  // namespace qdc
