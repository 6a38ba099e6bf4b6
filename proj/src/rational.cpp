#include "qdc/rational.hpp"

#include <ostream>

#include "qdc/errors.hpp"

namespace qdc {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw PoleError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(s, 10));
    const mpz_class num(s.substr(0, slash), 10);
    const mpz_class den(s.substr(slash + 1), 10);
    if (den == 0) throw PreconditionError("zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const PreconditionError*>(&e) != nullptr) throw;
    throw PreconditionError("not a rational number: '" + s + "'");
  }
}

Rational Rational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(e));
  // Powers of a reduced fraction stay reduced.
  mpq_class out;
  out.get_num() = num;
  out.get_den() = den;
  return Rational(std::move(out));
}

Rational Rational::inverse() const {
  if (is_zero()) throw PoleError("inverse of zero");
  mpq_class out;
  mpq_inv(out.get_mpq_t(), value_.get_mpq_t());
  return Rational(std::move(out));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

mpz_class Rational::floor() const {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

Rational Rational::frac() const { return *this - Rational(floor()); }

std::string Rational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw PoleError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

mpz_class binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

mpz_class factorial(long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

}  // namespace qdc
