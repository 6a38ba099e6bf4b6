#include "qdc/interpolation.hpp"

#include <numeric>
#include <stdexcept>

#include "qdc/errors.hpp"

namespace qdc {

namespace {

Rational modified(long j, const QParam& q, long base_exp, EulerCache* cache) {
  return cache != nullptr ? cache->modified(j, q, base_exp) : euler_modified(j, q, base_exp);
}

void check_prime(long p) {
  require(p >= 3 && is_prime(p), "p must be an odd prime, got " + std::to_string(p));
}

void check_twist_cancels(long m, long p) {
  require(m >= 0 && (m + 1) % (p - 1) == 0,
          "m + 1 must be divisible by p - 1 for a rational value (m = " + std::to_string(m) +
              ", p = " + std::to_string(p) + "); use t_series");
}

void check_unit_argument(long a, long p) {
  require(a >= 1, "T argument a must be positive");
  require(a % p != 0, "T argument a = " + std::to_string(a) + " is divisible by p = " +
                          std::to_string(p));
}

void check_padic_q(const QParam& q, const PAdicContext& ctx) {
  require(vp(Rational(1) - q.value(), ctx.p()) >= Valuation(1),
          "series evaluation needs q = 1 mod p, got q = " + q.to_string());
}

long residue(long x, long n) { return ((x % n) + n) % n; }

// Smallest J >= 1 such that every j >= J has j*r - vp(j!) >= digits, using
// vp(j!) <= (j-1)/(p-1). The bound j*r - (j-1)/(p-1) is increasing for r >= 1.
long truncation_index(long r, long p, long digits) {
  long j = 1;
  while (j * r - (j - 1) / (p - 1) < digits) ++j;
  return j;
}

// sum_{j<J} C(s,j) x_j where vp(x_j) >= j*r is asserted for every term.
template <typename TermFn>
PAdicApprox binomial_series(const PAdicInt& s, long r, long digits, TermFn&& term) {
  const long p = s.prime();
  const long stop = truncation_index(r, p, digits);
  PAdicApprox sum = PAdicApprox::zero(p, digits);
  for (long j = 0; j < stop; ++j) {
    const PAdicApprox x = term(j);
    if (!x.is_zero() && x.valuation() < Valuation(j * r)) {
      throw std::logic_error("series term " + std::to_string(j) + " is larger than its bound");
    }
    sum = sum + padic_binom(s, j) * x;
  }
  // Every omitted term vanishes modulo p^digits.
  return sum.truncated(digits);
}

}  // namespace

Rational t_int_value(long m, long a, long n, const QParam& q, EulerCache* cache) {
  require(m >= 0, "m must be nonnegative");
  require(n >= 1, "N must be positive");
  return q_int(n, q).pow(m) * q_euler_poly(m, QBracketArg::fraction(a, n), q, cache);
}

long inverse_residue(long p, long a, long n) {
  require(n >= 1, "N must be positive");
  require(std::gcd(p, n) == 1, "(p^-1 a)_N needs gcd(p, N) = 1");
  for (long x = 0; x < n; ++x) {
    if (residue(p * x - a, n) == 0) return x;
  }
  throw std::logic_error("no inverse residue found");
}

Rational euler_factor_term(long m, long a, long n, long p, const QParam& q, EulerCache* cache) {
  const long a_prime = inverse_residue(p, a, n);
  // ((p^-1 a)_N / N) against base q^{pN} is the pair (p * a', pN).
  return q_int(p * n, q).pow(m) *
         q_euler_poly(m, QBracketArg::fraction(p * a_prime, p * n), q, cache);
}

Rational t_int_A(long m, long a, long n, long p, const QParam& q, EulerCache* cache) {
  check_prime(p);
  check_twist_cancels(m, p);
  check_unit_argument(a, p);
  require(n >= 1, "N must be positive");

  const Rational q_a = q.pow(a);
  const Rational ratio = (Rational(1) - q.pow(n)) / (Rational(1) - q_a);
  Rational sum;
  Rational weight = 1;  // q^{aj} ratio^j
  for (long j = 0; j <= m; ++j) {
    sum += Rational(binomial(m, j)) * weight * modified(j, q, n, cache);
    weight *= q_a * ratio;
  }
  const Rational direct = q_int(a, q).pow(m) * sum;
  if (direct != t_int_value(m, a, n, q, cache)) {
    throw std::logic_error("finite T sum disagrees with [N]^m E_{m,q^N}(a/N)");
  }
  return direct;
}

Rational t_int_B(long m, long a, long n, long p, const QParam& q, EulerCache* cache) {
  check_prime(p);
  require(std::gcd(p, n) == 1, "reading B needs gcd(p, N) = 1 so that (p^-1 a)_N exists");
  return t_int_A(m, a, n, p, q, cache) - euler_factor_term(m, a, n, p, q, cache);
}

PAdicApprox t_series(const PAdicInt& s, long a, long n, const QParam& q, const PAdicContext& ctx,
                     EulerCache* cache) {
  const long p = ctx.p();
  require(s.prime() == p, "s and the context use different primes");
  require(n >= 1 && n % p == 0, "the T series needs p | N (N = " + std::to_string(n) + ")");
  check_unit_argument(a, p);
  check_padic_q(q, ctx);
  const long digits = ctx.digits();

  // sum_j C(s,j) q^{aj} rho^j E_{j,q^N},  rho = (1-q^N)/(1-q^a)
  const Rational q_a = q.pow(a);
  const Rational rho = (Rational(1) - q.pow(n)) / (Rational(1) - q_a);
  const long r = vp(rho, p).value();
  if (r < 1) throw std::logic_error("vp(rho) < 1 although p | N");
  const PAdicApprox euler_part = binomial_series(s, r, digits, [&](long j) {
    const Rational e = modified(j, q, n, cache);
    if (vp(e, p) < Valuation(0)) {
      throw std::logic_error("E_{j,q^N} is not p-integral; the truncation bound does not apply");
    }
    return to_padic((q_a * rho).pow(j) * e, ctx);
  });

  // <a>^s = sum_j C(s,j) (<a> - 1)^j with <a> = w^{-1}(a) [a]_q = 1 mod p.
  const PAdicApprox w_inv = PAdicApprox::from_unit(p, 0, 1, digits) / teichmuller(a, ctx);
  const PAdicApprox shifted = w_inv * to_padic(q_int(a, q), ctx) - PAdicApprox::from_unit(p, 0, 1, digits);
  PAdicApprox power_part = PAdicApprox::from_unit(p, 0, 1, digits);
  if (!shifted.is_zero()) {
    const long t = shifted.valuation().value();
    if (t < 1) throw std::logic_error("<a> is not a principal unit");
    power_part = binomial_series(s, t, digits, [&](long j) {
      return j == 0 ? PAdicApprox::from_unit(p, 0, 1, digits) : shifted.pow(j);
    });
  }

  const PAdicApprox out = (w_inv * power_part * euler_part).truncated(digits);
  if (out.absolute_precision() < 1) throw PrecisionError("t_series lost every digit");
  return out;
}

long removed_index(long a, long n, long p) {
  require(n % p != 0, "exactly one index is removed only when p does not divide N");
  long found = -1;
  long count = 0;
  for (long i = 0; i < p; ++i) {
    if (residue(a + i * n, p) == 0) {
      found = i;
      ++count;
    }
  }
  if (count != 1) throw std::logic_error("expected exactly one p-divisible index");
  return found;
}

PAdicApprox t_extended(const PAdicInt& s, long a, long n, const QParam& q, const PAdicContext& ctx,
                       EulerCache* cache) {
  const long p = ctx.p();
  check_unit_argument(a, p);
  require(n >= 1, "N must be positive");
  const long skip = removed_index(a, n, p);
  PAdicApprox sum = PAdicApprox::zero(p, ctx.digits());
  for (long i = 0; i < p; ++i) {
    if (i == skip) continue;
    const PAdicApprox term = t_series(s, residue(a + i * n, p * n), p * n, q, ctx, cache);
    sum = (i % 2 == 0) ? sum + term : sum - term;
  }
  const Rational factor = (Rational(1) + q.pow(n)) / (Rational(1) + q.pow(p * n));
  return to_padic(factor, ctx) * sum;
}

Rational distribution_sum_value(long m, long a, long n, long p, const QParam& q, bool restricted,
                                EulerCache* cache) {
  check_prime(p);
  require(n >= 1, "N must be positive");
  const long skip = restricted ? removed_index(a, n, p) : -1;
  Rational sum;
  for (long i = 0; i < p; ++i) {
    if (i == skip) continue;
    const Rational term = t_int_value(m, residue(a + i * n, p * n), p * n, q, cache);
    sum += (i % 2 == 0) ? term : -term;
  }
  return (Rational(1) + q.pow(n)) / (Rational(1) + q.pow(p * n)) * sum;
}

SpqRational s_pq(long m, long h, long k, long p, const QParam& q, TReading reading,
                 SkipPolicy policy, EulerCache* cache) {
  check_prime(p);
  check_twist_cancels(m, p);
  require(h >= 1 && k >= 1 && std::gcd(h, k) == 1, "h and k must be coprime positive integers");
  require(k % p != 0, "S_{p,q} needs p not dividing k");

  SpqRational out;
  for (long big_m = 1; big_m < k; ++big_m) {
    const long a = (h * big_m) % k;
    Rational t;
    if (a % p != 0) {
      t = reading == TReading::kA ? t_int_A(m, a, k, p, q, cache) : t_int_B(m, a, k, p, q, cache);
    } else if (policy == SkipPolicy::kSkipNonUnits) {
      out.skipped.push_back(big_m);
      continue;
    } else {
      ++out.non_unit_terms;
      t = t_int_value(m, a, k, q, cache);
      if (reading == TReading::kB) t -= euler_factor_term(m, a, k, p, q, cache);
    }
    const Rational term = q_int(big_m, q) * t;
    out.value += (big_m % 2 == 1) ? term : -term;
  }
  return out;
}

SpqPAdic s_pq_series(const PAdicInt& s, long h, long k, const QParam& q, const PAdicContext& ctx,
                     EulerCache* cache) {
  const long p = ctx.p();
  require(h >= 1 && k >= 1 && std::gcd(h, k) == 1, "h and k must be coprime positive integers");
  SpqPAdic out{PAdicApprox::zero(p, ctx.digits()), {}};
  for (long big_m = 1; big_m < k; ++big_m) {
    const long a = (h * big_m) % k;
    if (a % p == 0) {
      out.skipped.push_back(big_m);
      continue;
    }
    const PAdicApprox t =
        k % p == 0 ? t_series(s, a, k, q, ctx, cache) : t_extended(s, a, k, q, ctx, cache);
    const PAdicApprox term = to_padic(q_int(big_m, q), ctx) * t;
    out.value = (big_m % 2 == 1) ? out.value + term : out.value - term;
  }
  return out;
}

}  // namespace qdc
