#include <doctest.h>

#include <cmath>
#include <numeric>

#include "qdc/dedekind.hpp"
#include "qdc/errors.hpp"
#include "support.hpp"

using namespace qdc;

namespace {

// Euler polynomial from its explicit form sum_j C(n,j) E_j(0) x^{n-j}, with
// E_j(0) from E_j(0) + E_j(1) = 0.
Rational euler_poly_oracle(long n, const Rational& x) {
  std::vector<Rational> e{Rational(1)};
  for (long k = 1; k <= n; ++k) {
    Rational s;
    for (long j = 0; j < k; ++j) s += Rational(binomial(k, j)) * e[j];
    e.push_back(-s / Rational(2));
  }
  Rational out;
  for (long j = 0; j <= n; ++j) out += Rational(binomial(n, j)) * e[j] * x.pow(n - j);
  return out;
}

Rational dc_oracle(long m, long h, long k) {
  Rational sum;
  for (long big_m = 1; big_m < k; ++big_m) {
    const Rational x(h * big_m, k);
    const mpz_class fl = x.floor();
    const Rational ebar = euler_poly_oracle(m, x - Rational(fl));
    const Rational signed_ebar = mpz_class(fl % 2) == 0 ? ebar : -ebar;
    const Rational term = Rational(big_m, k) * signed_ebar;
    sum += big_m % 2 == 1 ? term : -term;
  }
  return sum;
}

}  // namespace

TEST_CASE("classical anchors") {
  CHECK(dc_sum_classical(1, 1, 2) == 0);
  CHECK(dc_sum_classical(1, 1, 3) == Rational(-1, 6));
  CHECK(dc_sum_classical(2, 1, 3) == Rational(2, 27));
  CHECK(higher_order_dc(1, 1, 3) == Rational(2, 9));
  CHECK(dc_sum_classical(3, 1, 1) == 0);
  CHECK_THROWS_AS(dc_sum_classical(1, 2, 4), PreconditionError);
}

TEST_CASE("classical DC sums agree with a direct oracle") {
  for (long k = 1; k <= 12; ++k) {
    for (long h = 1; h <= 2 * k + 3; ++h) {
      if (std::gcd(h, k) != 1) continue;
      for (long m = 0; m <= 4; ++m) CHECK(dc_sum_classical(m, h, k) == dc_oracle(m, h, k));
    }
  }
}

TEST_CASE("DC sums are periodic in h with period 2k") {
  for (long k = 2; k <= 9; ++k) {
    for (long h = 1; h < k; ++h) {
      if (std::gcd(h, k) != 1) continue;
      for (long m = 0; m <= 3; ++m) CHECK(dc_sum_classical(m, h + 2 * k, k) == dc_sum_classical(m, h, k));
    }
  }
  // Shifting h by k alone flips signs inside the sum and is not a symmetry.
  CHECK(dc_sum_classical(1, 4, 3) != dc_sum_classical(1, 1, 3));
}

TEST_CASE("q-analogue of the DC sum") {
  CHECK(dc_sum_q(1, 1, 2, 2, QParam::algebraic(2)) == Rational(-1, 18));
  CHECK(dc_sum_q(2, 1, 1, 1, QParam::algebraic(3)) == 0);
  CHECK_THROWS_AS(dc_sum_q(1, 1, 3, 4, QParam::algebraic(2)), PreconditionError);
  CHECK_THROWS_AS(dc_sum_q(1, 3, 6, 6, QParam::algebraic(2)), PreconditionError);

  // The base q^l enters only through the numbers E_{j,q^l}; the cache must not
  // change values.
  EulerCache cache;
  for (int i = 0; i < 10; ++i) {
    const QParam q = QParam::algebraic(qdc::testing::random_q(9));
    CHECK(dc_sum_q(2, 2, 5, 10, q, &cache) == dc_sum_q(2, 2, 5, 10, q));
  }
}

namespace {

// The q = 1 limit of the q-analogue: fractional parts without the periodic sign.
Rational dc_residue_limit(long m, long h, long k) {
  Rational sum;
  for (long big_m = 1; big_m < k; ++big_m) {
    const Rational term = Rational(big_m, k) * euler_poly_oracle(m, Rational(h * big_m % k, k));
    sum += big_m % 2 == 1 ? term : -term;
  }
  return sum;
}

}  // namespace

TEST_CASE("q-analogue tends to its classical limit") {
  const QParam q = QParam::algebraic(Rational(1000001, 1000000));
  for (long k = 2; k <= 5; ++k) {
    for (long h = 1; h < k; ++h) {
      if (std::gcd(h, k) != 1) continue;
      for (long m = 0; m <= 3; ++m) {
        const double approx = dc_sum_q(m, h, k, k, q).to_double();
        CHECK(std::abs(approx - dc_residue_limit(m, h, k).to_double()) <= 1e-4);
        if (h == 1) CHECK(dc_residue_limit(m, h, k) == dc_sum_classical(m, h, k));
      }
    }
  }
}
