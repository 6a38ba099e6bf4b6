#include "qdc/padic.hpp"

#include <algorithm>

#include "qdc/errors.hpp"

namespace qdc {

long Valuation::value() const {
  if (is_infinite()) throw std::logic_error("value() of the infinite valuation");
  return v_;
}

std::string Valuation::to_string() const {
  return is_infinite() ? std::string("inf") : std::to_string(v_);
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Valuation vp(const mpz_class& x, long p) {
  if (x == 0) return Valuation::infinity();
  mpz_class rest;
  const mpz_class prime(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

Valuation vp(const Rational& x, long p) {
  if (x.is_zero()) return Valuation::infinity();
  return vp(x.numerator(), p).value() - vp(x.denominator(), p).value();
}

long vp_factorial(long n, long p) {
  long total = 0;
  for (long d = n / p; d > 0; d /= p) total += d;
  return total;
}

mpz_class ipow(long base, long e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return out;
}

bool congruent(const Rational& x, const Rational& y, long p, long n) {
  return vp(x - y, p) >= Valuation(n);
}

namespace {

mpz_class mod(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class inverse_mod(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw std::logic_error("element is not invertible modulo " + m.get_str());
  }
  return r;
}

// Strips every factor p from x in place and returns how many were removed.
long strip(mpz_class& x, long p) {
  const mpz_class prime(p);
  return static_cast<long>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

}  // namespace

PAdicContext::PAdicContext(long p, long digits) : p_(p), digits_(digits) {
  require(p >= 3 && is_prime(p), "p must be an odd prime, got " + std::to_string(p));
  require(digits >= 1, "precision K must be at least 1");
  modulus_ = ipow(p, digits);
}

PAdicApprox PAdicApprox::zero(long p, long absolute_precision) {
  return PAdicApprox(p, Valuation::infinity(), 0, absolute_precision);
}

PAdicApprox PAdicApprox::normalise(long p, long shift, mpz_class value, long abs_prec) {
  if (value == 0) return zero(p, abs_prec);
  const long v = shift + strip(value, p);
  if (v >= abs_prec) return zero(p, abs_prec);
  return PAdicApprox(p, v, mod(value, ipow(p, abs_prec - v)), abs_prec);
}

PAdicApprox PAdicApprox::from_rational(const Rational& x, long p, long relative_digits) {
  if (relative_digits < 1) throw PrecisionError("requested relative precision below one digit");
  if (x.is_zero()) return zero(p, relative_digits);
  mpz_class num = x.numerator();
  mpz_class den = x.denominator();
  const long v = strip(num, p) - strip(den, p);
  const mpz_class m = ipow(p, relative_digits);
  const mpz_class unit = mod(num * inverse_mod(den, m), m);
  return PAdicApprox(p, v, unit, v + relative_digits);
}

PAdicApprox PAdicApprox::from_unit(long p, long v, const mpz_class& unit, long relative_digits) {
  if (relative_digits < 1) throw PrecisionError("requested relative precision below one digit");
  return normalise(p, v, unit, v + relative_digits);
}

long PAdicApprox::relative_precision() const {
  return is_zero() ? 0 : abs_prec_ - val_.value();
}

mpz_class PAdicApprox::residue() const {
  if (is_zero()) return 0;
  const long v = val_.value();
  if (v < 0) throw std::logic_error("residue() of a non-integral p-adic number");
  return mod(ipow(p_, v) * unit_, ipow(p_, abs_prec_));
}

PAdicApprox PAdicApprox::truncated(long absolute_precision) const {
  if (absolute_precision >= abs_prec_) return *this;
  if (is_zero()) return zero(p_, absolute_precision);
  return normalise(p_, val_.value(), unit_, absolute_precision);
}

Valuation PAdicApprox::distance(const PAdicApprox& other) const {
  const PAdicApprox d = *this - other;
  return d.is_zero() ? Valuation(d.abs_prec_) : d.val_;
}

bool PAdicApprox::agrees_with(const PAdicApprox& other) const { return (*this - other).is_zero(); }

PAdicApprox PAdicApprox::operator-() const {
  if (is_zero()) return *this;
  return normalise(p_, val_.value(), -unit_, abs_prec_);
}

PAdicApprox operator+(const PAdicApprox& a, const PAdicApprox& b) {
  if (a.p_ != b.p_) throw std::logic_error("mixing p-adic numbers of different primes");
  const long prec = std::min(a.abs_prec_, b.abs_prec_);
  if (a.is_zero()) return b.truncated(prec);
  if (b.is_zero()) return a.truncated(prec);
  const long va = a.val_.value();
  const long vb = b.val_.value();
  const long lo = std::min(va, vb);
  const mpz_class sum = ipow(a.p_, va - lo) * a.unit_ + ipow(a.p_, vb - lo) * b.unit_;
  return PAdicApprox::normalise(a.p_, lo, sum, prec);
}

PAdicApprox operator-(const PAdicApprox& a, const PAdicApprox& b) { return a + (-b); }

PAdicApprox operator*(const PAdicApprox& a, const PAdicApprox& b) {
  if (a.p_ != b.p_) throw std::logic_error("mixing p-adic numbers of different primes");
  if (a.is_zero() && b.is_zero()) return PAdicApprox::zero(a.p_, a.abs_prec_ + b.abs_prec_);
  if (a.is_zero()) return PAdicApprox::zero(a.p_, a.abs_prec_ + b.val_.value());
  if (b.is_zero()) return PAdicApprox::zero(a.p_, b.abs_prec_ + a.val_.value());
  const long rel = std::min(a.relative_precision(), b.relative_precision());
  const long v = a.val_.value() + b.val_.value();
  return PAdicApprox(a.p_, v, mod(a.unit_ * b.unit_, ipow(a.p_, rel)), v + rel);
}

PAdicApprox operator/(const PAdicApprox& a, const PAdicApprox& b) {
  if (a.p_ != b.p_) throw std::logic_error("mixing p-adic numbers of different primes");
  if (b.is_zero()) throw PrecisionError("division by a p-adic number indistinguishable from zero");
  if (a.is_zero()) return PAdicApprox::zero(a.p_, a.abs_prec_ - b.val_.value());
  const long rel = std::min(a.relative_precision(), b.relative_precision());
  const long v = a.val_.value() - b.val_.value();
  const mpz_class m = ipow(a.p_, rel);
  return PAdicApprox(a.p_, v, mod(a.unit_ * inverse_mod(b.unit_, m), m), v + rel);
}

PAdicApprox PAdicApprox::pow(long e) const {
  if (e < 0) return from_unit(p_, 0, 1, std::max(1L, relative_precision())) / pow(-e);
  if (e == 0) return from_unit(p_, 0, 1, is_zero() ? abs_prec_ : relative_precision());
  if (is_zero()) return zero(p_, abs_prec_ * e);
  const long rel = relative_precision();
  const mpz_class m = ipow(p_, rel);
  mpz_class u;
  mpz_powm_ui(u.get_mpz_t(), unit_.get_mpz_t(), static_cast<unsigned long>(e), m.get_mpz_t());
  const long v = val_.value() * e;
  return PAdicApprox(p_, v, u, v + rel);
}

std::string PAdicApprox::to_string() const {
  const std::string p = std::to_string(p_);
  if (is_zero()) return "O(" + p + "^" + std::to_string(abs_prec_) + ")";
  return p + "^" + val_.to_string() + " * " + unit_.get_str() + " (mod " + p + "^" +
         std::to_string(abs_prec_) + ")";
}

PAdicInt::PAdicInt(const mpz_class& value, long p, long digits) : p_(p), digits_(digits) {
  require(digits >= 1, "a p-adic integer needs at least one digit");
  value_ = mod(value, ipow(p, digits));
}

PAdicApprox to_padic(const Rational& x, const PAdicContext& ctx) {
  return PAdicApprox::from_rational(x, ctx.p(), ctx.digits());
}

PAdicApprox teichmuller(long a, const PAdicContext& ctx) {
  const long p = ctx.p();
  require(a % p != 0, "Teichmuller character needs p not dividing a");
  const mpz_class& m = ctx.modulus();
  mpz_class x = mod(mpz_class(a), m);
  const mpz_class e(p);
  // x -> x^p gains one correct digit per step.
  for (long i = 0; i <= ctx.digits(); ++i) {
    mpz_class next;
    mpz_powm(next.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    if (next == x) break;
    x = next;
  }
  return PAdicApprox::from_unit(p, 0, x, ctx.digits());
}

PAdicApprox padic_binom(const PAdicInt& s, long j) {
  require(j >= 0, "binomial index must be nonnegative");
  const long prec = s.digits() - vp_factorial(j, s.prime());
  if (prec <= 0) {
    throw PrecisionError("C(s," + std::to_string(j) + ") has no guaranteed digits at precision " +
                         std::to_string(s.digits()));
  }
  mpz_class c;
  mpz_bin_ui(c.get_mpz_t(), s.value().get_mpz_t(), static_cast<unsigned long>(j));
  return PAdicApprox::from_unit(s.prime(), 0, c, prec);
}

}  // namespace qdc
