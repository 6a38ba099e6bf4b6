#include "qdc/dedekind.hpp"

#include <numeric>

#include "qdc/errors.hpp"

namespace qdc {

namespace {

void check_hk(long h, long k) {
  require(h >= 1 && k >= 1, "h and k must be positive");
  require(std::gcd(h, k) == 1,
          "h and k must be coprime, got (" + std::to_string(h) + ", " + std::to_string(k) + ")");
}

}  // namespace

Rational dc_sum_classical(long m, long h, long k) {
  require(m >= 0, "weight m must be nonnegative");
  check_hk(h, k);
  Rational sum;
  for (long big_m = 1; big_m < k; ++big_m) {
    const Rational term = Rational(big_m) / Rational(k) *
                          periodic_euler(m, Rational(mpz_class(h * big_m), mpz_class(k)));
    sum += (big_m % 2 == 1) ? term : -term;
  }
  return sum;
}

Rational dc_sum_q(long m, long h, long k, long l, const QParam& q, EulerCache* cache) {
  require(m >= 0, "weight m must be nonnegative");
  check_hk(h, k);
  require(l >= 1 && l % k == 0, "base exponent l must be a positive multiple of k");
  const long scale = l / k;
  const Rational one_minus_qk = Rational(1) - q.pow(k);
  Rational sum;
  for (long big_m = 1; big_m < k; ++big_m) {
    // {hM/k} = r/k = (r * l/k) / l, evaluated against base q^l.
    const long r = (h * big_m) % k;
    const Rational term = (Rational(1) - q.pow(big_m)) / one_minus_qk *
                          q_euler_poly(m, QBracketArg::fraction(r * scale, l), q, cache);
    sum += (big_m % 2 == 1) ? term : -term;
  }
  return sum;
}

Rational higher_order_dc(long m, long h, long k) {
  require(m >= 0, "weight m must be nonnegative");
  return Rational(k).pow(m) * dc_sum_classical(m + 1, h, k);
}

}  // namespace qdc
