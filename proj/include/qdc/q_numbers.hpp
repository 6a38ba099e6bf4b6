#pragma once

#include <map>
#include <optional>
#include <shared_mutex>
#include <tuple>

#include "qdc/padic.hpp"
#include "qdc/rational.hpp"

namespace qdc {

// The deformation parameter q. Algebraic mode only excludes the poles of the
// closed forms (q in {0, 1, -1}); p-adic mode additionally requires
// vp(1 - q) >= 1, which forces q to be a p-adic unit.
class QParam {
 public:
  static QParam algebraic(const Rational& q);
  static QParam padic(const Rational& q, const PAdicContext& ctx);

  const Rational& value() const { return q_; }
  bool is_padic() const { return ctx_.has_value(); }
  const std::optional<PAdicContext>& context() const { return ctx_; }

  // q^e for any integer e.
  Rational pow(long e) const { return q_.pow(e); }
  // The parameter q^n in the same mode (used for base changes q -> q^N).
  QParam power(long n) const;

  std::string to_string() const { return q_.to_string(); }

 private:
  QParam(Rational q, std::optional<PAdicContext> ctx) : q_(std::move(q)), ctx_(std::move(ctx)) {}

  Rational q_;
  std::optional<PAdicContext> ctx_;
};

// x of E_{m,q}(x): either an integer (denominator 1) or a fraction a/N that
// is evaluated against the base q^N, so q^(N * (a/N) * l) = q^(a*l) stays an
// integral power.
struct QBracketArg {
  long numerator;
  long denominator;

  static QBracketArg integer(long x) { return {x, 1}; }
  static QBracketArg fraction(long a, long n);
};

// Memoised q-Euler values keyed by (kind, index, base exponent, q). Safe for
// concurrent readers and writers; a hit returns exactly what a fresh
// computation would.
class EulerCache {
 public:
  enum class Kind { kModified, kCarlitz, kClassical };

  Rational modified(long n, const QParam& q, long base_exp = 1);
  Rational carlitz(long m, const QParam& q);
  Rational classical(long n);  // E_n(0)

  std::size_t size() const;
  void clear();

 private:
  using Key = std::tuple<Kind, long, long, Rational>;

  template <typename Fn>
  Rational lookup(const Key& key, Fn&& compute);

  mutable std::shared_mutex mutex_;
  std::map<Key, Rational> values_;
};

// (1 - q^x)/(1 - q).
Rational q_int(long x, const QParam& q);

// Modified q-Euler number E_{n, q^N} from the closed form
//   (1 + Q) (1 - Q)^{-n} sum_l C(n,l) (-1)^l / (1 + Q^l),   Q = q^N.
Rational euler_modified(long n, const QParam& q, long base_exp = 1);

// The same numbers from E_{0,Q} = (1+Q)/2 and (QE + 1)^n + E_{n,Q} = 0, read
// umbrally with E^0 -> E_{0,Q}. Independent of the closed form.
Rational euler_modified_recurrence(long n, const QParam& q, long base_exp = 1);

// Carlitz-type q-Euler number: the moment of [x]_q^m under the fermionic
// q-measure, in closed form (1-q)^{-m} sum_l C(m,l) (-1)^l (1+q)/(1+q^{l+1}).
Rational euler_carlitz(long m, const QParam& q);

// q-Euler polynomial E_{m, q^N}(a/N) for arg = a/N (plain E_{m,q}(x) when
// N = 1), via its binomial expansion over the modified numbers.
Rational q_euler_poly(long m, QBracketArg arg, const QParam& q, EulerCache* cache = nullptr);

// Classical Euler polynomial E_n(x), generating function 2 e^{xt}/(e^t + 1).
Rational classical_euler_poly(long n, const Rational& x);

// Periodic Euler function (-1)^[x] E_m({x}); antiperiodic with period 1.
Rational periodic_euler(long m, const Rational& x);

}  // namespace qdc
