#pragma once

#include <gmpxx.h>

#include <compare>
#include <limits>
#include <string>

#include "qdc/rational.hpp"

namespace qdc {

// p-adic valuation extended by a +infinity sentinel for zero. The sentinel
// compares greater than every finite value and absorbs addition.
class Valuation {
 public:
  constexpr Valuation(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  static constexpr Valuation infinity() { return Valuation(kInf, Tag{}); }

  constexpr bool is_infinite() const { return v_ == kInf; }
  long value() const;

  friend constexpr bool operator==(Valuation a, Valuation b) = default;
  friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) {
    return a.v_ <=> b.v_;
  }
  friend constexpr Valuation operator+(Valuation a, Valuation b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Valuation(a.v_ + b.v_);
  }

  // "inf" for the sentinel, decimal otherwise.
  std::string to_string() const;

 private:
  struct Tag {};
  static constexpr long kInf = std::numeric_limits<long>::max();
  constexpr Valuation(long v, Tag) : v_(v) {}

  long v_;
};

bool is_prime(long n);

Valuation vp(const mpz_class& x, long p);
Valuation vp(const Rational& x, long p);

// Largest power of p dividing n!, by Legendre's formula.
long vp_factorial(long n, long p);

mpz_class ipow(long base, long e);

// true iff vp(x - y) >= n.
bool congruent(const Rational& x, const Rational& y, long p, long n);

// An odd prime together with a working precision of K base-p digits.
class PAdicContext {
 public:
  PAdicContext(long p, long digits);

  long p() const { return p_; }
  long digits() const { return digits_; }
  const mpz_class& modulus() const { return modulus_; }

  friend bool operator==(const PAdicContext& a, const PAdicContext& b) {
    return a.p_ == b.p_ && a.digits_ == b.digits_;
  }

 private:
  long p_;
  long digits_;
  mpz_class modulus_;
};

// A p-adic number p^v * u known modulo p^A, where A is the absolute
// precision. Nonzero values carry a unit 0 < u < p^(A-v), p not dividing u;
// A - v is the relative precision. Zero carries the infinite valuation and
// only an absolute precision (it is "O(p^A)").
class PAdicApprox {
 public:
  static PAdicApprox zero(long p, long absolute_precision);
  static PAdicApprox from_rational(const Rational& x, long p, long relative_digits);
  // p^v * unit, reduced modulo p^relative_digits.
  static PAdicApprox from_unit(long p, long v, const mpz_class& unit, long relative_digits);

  long prime() const { return p_; }
  Valuation valuation() const { return val_; }
  const mpz_class& unit() const { return unit_; }
  bool is_zero() const { return val_.is_infinite(); }
  long absolute_precision() const { return abs_prec_; }
  // Digits of the unit that are guaranteed; 0 for an approximate zero.
  long relative_precision() const;

  // Integer representative of p^v * u modulo p^A. Requires v >= 0.
  mpz_class residue() const;

  // Coarsen to an absolute precision no finer than `absolute_precision`.
  PAdicApprox truncated(long absolute_precision) const;

  // Lower bound on vp(this - other) justified by the precision of both
  // operands: the exact valuation when the difference is visibly nonzero,
  // otherwise the common absolute precision.
  Valuation distance(const PAdicApprox& other) const;
  bool agrees_with(const PAdicApprox& other) const;

  PAdicApprox operator-() const;
  friend PAdicApprox operator+(const PAdicApprox& a, const PAdicApprox& b);
  friend PAdicApprox operator-(const PAdicApprox& a, const PAdicApprox& b);
  friend PAdicApprox operator*(const PAdicApprox& a, const PAdicApprox& b);
  friend PAdicApprox operator/(const PAdicApprox& a, const PAdicApprox& b);
  PAdicApprox pow(long e) const;

  // "p^v * u (mod p^A)", or "O(p^A)" for zero.
  std::string to_string() const;

 private:
  PAdicApprox(long p, Valuation v, mpz_class unit, long abs_prec)
      : p_(p), val_(v), unit_(std::move(unit)), abs_prec_(abs_prec) {}

  // Normalise p^shift * value known modulo p^abs_prec.
  static PAdicApprox normalise(long p, long shift, mpz_class value, long abs_prec);

  long p_;
  Valuation val_;
  mpz_class unit_;
  long abs_prec_;
};

// An element of Z_p truncated to a fixed number of base-p digits, held as
// its representative in [0, p^digits).
class PAdicInt {
 public:
  PAdicInt(const mpz_class& value, long p, long digits);

  long prime() const { return p_; }
  long digits() const { return digits_; }
  const mpz_class& value() const { return value_; }

 private:
  mpz_class value_;
  long p_;
  long digits_;
};

// x as a p-adic approximation with ctx.digits() relative digits.
PAdicApprox to_padic(const Rational& x, const PAdicContext& ctx);

// The (p-1)-st root of unity congruent to a mod p, to ctx.digits() digits.
PAdicApprox teichmuller(long a, const PAdicContext& ctx);

// C(s, j) for s in Z_p; precision s.digits() - vp(j!) absolute digits.
PAdicApprox padic_binom(const PAdicInt& s, long j);

}  // namespace qdc
