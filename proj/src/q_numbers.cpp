#include "qdc/q_numbers.hpp"

#include <mutex>
#include <vector>

#include "qdc/errors.hpp"

namespace qdc {

QParam QParam::algebraic(const Rational& q) {
  if (q == Rational(0) || q == Rational(1) || q == Rational(-1)) {
    throw PoleError("q must avoid 0, 1 and -1, got " + q.to_string());
  }
  return QParam(q, std::nullopt);
}

QParam QParam::padic(const Rational& q, const PAdicContext& ctx) {
  QParam out = algebraic(q);
  require(vp(Rational(1) - q, ctx.p()) >= Valuation(1),
          "p-adic mode needs q = 1 mod " + std::to_string(ctx.p()) + ", got " + q.to_string());
  out.ctx_ = ctx;
  return out;
}

QParam QParam::power(long n) const {
  require(n != 0, "base change q -> q^0 is degenerate");
  return QParam(q_.pow(n), ctx_);
}

QBracketArg QBracketArg::fraction(long a, long n) {
  require(n >= 1, "fractional argument needs a positive denominator");
  return {a, n};
}

Rational q_int(long x, const QParam& q) {
  return (Rational(1) - q.pow(x)) / (Rational(1) - q.value());
}

namespace {

Rational checked_one_plus(const Rational& t, const char* what) {
  Rational out = Rational(1) + t;
  if (out.is_zero()) throw PoleError(std::string(what) + ": pole where 1 + q^e = 0");
  return out;
}

}  // namespace

Rational euler_modified(long n, const QParam& q, long base_exp) {
  require(n >= 0, "Euler index must be nonnegative");
  const Rational big_q = q.pow(base_exp);
  Rational sum;
  Rational big_q_l = 1;
  for (long l = 0; l <= n; ++l) {
    const Rational term = Rational(binomial(n, l)) / checked_one_plus(big_q_l, "euler_modified");
    sum += (l % 2 == 0) ? term : -term;
    big_q_l *= big_q;
  }
  const Rational one_minus = Rational(1) - big_q;
  return checked_one_plus(big_q, "euler_modified") * sum / one_minus.pow(n);
}

Rational euler_modified_recurrence(long n, const QParam& q, long base_exp) {
  require(n >= 0, "Euler index must be nonnegative");
  const Rational big_q = q.pow(base_exp);
  std::vector<Rational> e;
  e.reserve(static_cast<std::size_t>(n) + 1);
  e.push_back((Rational(1) + big_q) / Rational(2));
  for (long k = 1; k <= n; ++k) {
    // sum_{l<k} C(k,l) Q^l E_l + (Q^k + 1) E_k = 0
    Rational lower;
    for (long l = 0; l < k; ++l) {
      lower += Rational(binomial(k, l)) * big_q.pow(l) * e[static_cast<std::size_t>(l)];
    }
    e.push_back(-lower / checked_one_plus(big_q.pow(k), "euler_modified_recurrence"));
  }
  return e.back();
}

Rational euler_carlitz(long m, const QParam& q) {
  require(m >= 0, "Euler index must be nonnegative");
  const Rational& qv = q.value();
  const Rational one_plus_q = checked_one_plus(qv, "euler_carlitz");
  Rational sum;
  Rational q_l1 = qv;
  for (long l = 0; l <= m; ++l) {
    const Rational term =
        Rational(binomial(m, l)) * one_plus_q / checked_one_plus(q_l1, "euler_carlitz");
    sum += (l % 2 == 0) ? term : -term;
    q_l1 *= qv;
  }
  return sum / (Rational(1) - qv).pow(m);
}

Rational q_euler_poly(long m, QBracketArg arg, const QParam& q, EulerCache* cache) {
  require(m >= 0, "polynomial degree must be nonnegative");
  require(arg.denominator >= 1, "fractional argument needs a positive denominator");
  const long n = arg.denominator;
  const long a = arg.numerator;
  const Rational bracket = (Rational(1) - q.pow(a)) / (Rational(1) - q.pow(n));
  const Rational q_a = q.pow(a);
  Rational out;
  Rational q_al = 1;
  for (long l = 0; l <= m; ++l) {
    const Rational e = cache != nullptr ? cache->modified(l, q, n) : euler_modified(l, q, n);
    out += Rational(binomial(m, l)) * q_al * e * bracket.pow(m - l);
    q_al *= q_a;
  }
  return out;
}

Rational classical_euler_poly(long n, const Rational& x) {
  require(n >= 0, "Euler index must be nonnegative");
  std::vector<Rational> e;
  e.reserve(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    Rational lower;
    for (long j = 0; j < k; ++j) lower += Rational(binomial(k, j)) * e[static_cast<std::size_t>(j)];
    e.push_back(x.pow(k) - lower / Rational(2));
  }
  return e.back();
}

Rational periodic_euler(long m, const Rational& x) {
  const mpz_class whole = x.floor();
  const Rational value = classical_euler_poly(m, x.frac());
  return mpz_odd_p(whole.get_mpz_t()) != 0 ? -value : value;
}

template <typename Fn>
Rational EulerCache::lookup(const Key& key, Fn&& compute) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = values_.find(key); it != values_.end()) return it->second;
  }
  Rational value = compute();
  std::unique_lock lock(mutex_);
  return values_.try_emplace(key, std::move(value)).first->second;
}

Rational EulerCache::modified(long n, const QParam& q, long base_exp) {
  return lookup({Kind::kModified, n, base_exp, q.value()},
                [&] { return euler_modified(n, q, base_exp); });
}

Rational EulerCache::carlitz(long m, const QParam& q) {
  return lookup({Kind::kCarlitz, m, 1, q.value()}, [&] { return euler_carlitz(m, q); });
}

Rational EulerCache::classical(long n) {
  return lookup({Kind::kClassical, n, 0, Rational(0)},
                [&] { return classical_euler_poly(n, Rational(0)); });
}

std::size_t EulerCache::size() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

void EulerCache::clear() {
  std::unique_lock lock(mutex_);
  values_.clear();
}

}  // namespace qdc
