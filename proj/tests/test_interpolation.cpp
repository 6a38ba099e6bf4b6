#include <doctest.h>

#include <numeric>

#include "qdc/errors.hpp"
#include "qdc/interpolation.hpp"
#include "support.hpp"

using namespace qdc;

namespace {

// Reading A assembled from recurrence-computed numbers.
Rational t_finite_oracle(long m, long a, long n, const QParam& q) {
  const Rational qa = q.pow(a);
  const Rational rho = (Rational(1) - q.pow(n)) / (Rational(1) - qa);
  Rational sum;
  for (long j = 0; j <= m; ++j) {
    sum += Rational(binomial(m, j)) * (qa * rho).pow(j) * euler_modified_recurrence(j, q, n);
  }
  return q_int(a, q).pow(m) * sum;
}

}  // namespace

TEST_CASE("finite readings of T") {
  const QParam q4 = QParam::algebraic(4);
  CHECK(t_int_A(1, 1, 3, 3, q4) == Rational(-19, 2));
  CHECK(t_int_value(1, 1, 3, q4) == Rational(-19, 2));
  CHECK(t_int_B(1, 1, 2, 3, q4) == 660);
  for (int i = 0; i < 15; ++i) {
    const QParam q = QParam::algebraic(qdc::testing::random_q(12));
    const Rational qv = q.value();
    const Rational expected = (Rational(1) - qv) / Rational(2) -
                              (Rational(1) - qv.pow(3)).pow(2) / (Rational(2) * (Rational(1) - qv));
    CHECK(t_int_B(1, 1, 2, 3, q) == expected);
    for (long p : {3L, 5L}) {
      for (long m : {p - 2, 2 * p - 3}) {
        for (long n = 1; n <= 6; ++n) {
          for (long a = 1; a <= 7; ++a) {
            if (a % p == 0) continue;
            CHECK(t_int_A(m, a, n, p, q) == t_finite_oracle(m, a, n, q));
          }
        }
      }
    }
  }
  CHECK(inverse_residue(3, 1, 2) == 1);
  CHECK(inverse_residue(5, 3, 7) == 2);
  CHECK_THROWS_AS(t_int_A(2, 1, 3, 3, q4), PreconditionError);
  CHECK_THROWS_AS(t_int_A(1, 3, 4, 3, q4), PreconditionError);
  CHECK_THROWS_AS(t_int_A(1, 1, 3, 4, q4), PreconditionError);
  CHECK_THROWS_AS(t_int_B(1, 1, 3, 3, q4), PreconditionError);
}

TEST_CASE("Euler-factor correction is p-adically small") {
  for (long p : {3L, 5L}) {
    const QParam q = QParam::padic(1 + p, PAdicContext(p, 6));
    for (long n : {2L, 4L, 7L}) {
      if (n % p == 0) continue;
      const Rational corr = euler_factor_term(p - 2, 1, n, p, q);
      CHECK(vp(corr, p) >= vp(q_int(p * n, q).pow(p - 2), p));
    }
  }
}

TEST_CASE("series at s = 0") {
  for (long p : {3L, 5L}) {
    const PAdicContext ctx(p, 6);
    const QParam q = QParam::padic(1 + p, ctx);
    for (long a = 1; a < p * p; ++a) {
      if (a % p == 0) continue;
      const PAdicApprox v = t_series(PAdicInt(0, p, 6), a, p * p, q, ctx);
      const PAdicApprox expected =
          to_padic((Rational(1) + q.pow(p * p)) / Rational(2), ctx) / teichmuller(a, ctx);
      CHECK(v.agrees_with(expected));
    }
  }
}

TEST_CASE("series at integers reproduces the finite reading") {
  for (long p : {3L, 5L}) {
    for (long digits : {4L, 6L, 8L}) {
      const PAdicContext ctx(p, digits);
      for (const Rational& qv : {Rational(1 + p), Rational(1 - 2 * p), Rational(1 + p, 1 + 3 * p)}) {
        const QParam q = QParam::padic(qv, ctx);
        EulerCache cache;
        for (long n : {p, 2 * p, p * p}) {
          for (long a = 1; a < n; ++a) {
            if (a % p == 0) continue;
            for (long m : {p - 2, 2 * p - 3, 3 * p - 4}) {
              const PAdicApprox series = t_series(PAdicInt(m, p, digits), a, n, q, ctx, &cache);
              CHECK(series.absolute_precision() >= 1);
              CHECK(series.agrees_with(to_padic(t_int_A(m, a, n, p, q, &cache), ctx)));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("more digits refine fewer digits") {
  for (long p : {3L, 5L}) {
    for (int i = 0; i < 20; ++i) {
      const long s = qdc::testing::uniform(-40, 400);
      const long a = qdc::testing::uniform(1, 3 * p);
      if (a % p == 0) continue;
      const PAdicContext coarse(p, 4);
      const PAdicContext fine(p, 7);
      const Rational qv(1 + p);
      const PAdicApprox x = t_series(PAdicInt(s, p, 4), a, p, QParam::padic(qv, coarse), coarse);
      const PAdicApprox y = t_series(PAdicInt(s, p, 7), a, p, QParam::padic(qv, fine), fine);
      CHECK(y.distance(x) >= Valuation(x.absolute_precision()));
    }
  }
}

TEST_CASE("Kummer-type congruences") {
  for (long p : {3L, 5L}) {
    const PAdicContext ctx(p, 7);
    const QParam q = QParam::padic(1 + p, ctx);
    for (long c = 0; c <= 3; ++c) {
      for (long m1 : {1L, 2L, 4L}) {
        const long m2 = m1 + (p - 1) * ipow(p, c).get_si();
        for (long a : {1L, 2L}) {
          const PAdicApprox x = t_series(PAdicInt(m1, p, 7), a, p, q, ctx);
          const PAdicApprox y = t_series(PAdicInt(m2, p, 7), a, p, q, ctx);
          CHECK(x.distance(y) >= Valuation(c + 1));
        }
      }
    }
  }
}

TEST_CASE("series preconditions") {
  const PAdicContext ctx(3, 5);
  const QParam q = QParam::padic(4, ctx);
  CHECK_THROWS_AS(t_series(PAdicInt(1, 3, 5), 1, 4, q, ctx), PreconditionError);
  CHECK_THROWS_AS(t_series(PAdicInt(1, 3, 5), 3, 6, q, ctx), PreconditionError);
  CHECK_THROWS_AS(t_series(PAdicInt(1, 5, 5), 1, 3, q, ctx), PreconditionError);
  CHECK_THROWS_AS(t_series(PAdicInt(1, 3, 5), 1, 3, QParam::algebraic(2), ctx), PreconditionError);
}

TEST_CASE("extension to moduli prime to p") {
  for (long p : {3L, 5L}) {
    for (long n = 1; n <= 8; ++n) {
      if (n % p == 0) {
        CHECK_THROWS_AS(removed_index(1, n, p), PreconditionError);
        continue;
      }
      for (long a = 1; a < 2 * n + 2; ++a) {
        const long i = removed_index(a, n, p);
        CHECK((a + i * n) % p == 0);
      }
    }
    const PAdicContext ctx(p, 6);
    const QParam q = QParam::padic(1 + p, ctx);
    EulerCache cache;
    for (long n : {2L, 4L, 7L}) {
      if (n % p == 0) continue;
      for (long a = 1; a < n; ++a) {
        if (a % p == 0) continue;
        for (long m : {p - 2, 2 * p - 3}) {
          const PAdicApprox ext = t_extended(PAdicInt(m, p, 6), a, n, q, ctx, &cache);
          CHECK(ext.agrees_with(to_padic(distribution_sum_value(m, a, n, p, q, true, &cache), ctx)));
          // The full distribution sum is the finite reading itself.
          CHECK(distribution_sum_value(m, a, n, p, q, false, &cache) == t_int_A(m, a, n, p, q, &cache));
        }
      }
    }
  }
}

TEST_CASE("p-adic DC sums") {
  const QParam q4 = QParam::algebraic(4);
  CHECK(s_pq(1, 1, 1, 3, q4, TReading::kA).value == 0);
  CHECK(s_pq(1, 1, 2, 3, q4, TReading::kA).value == Rational(-3, 2));
  CHECK(s_pq(1, 1, 2, 3, q4, TReading::kB).value == t_int_B(1, 1, 2, 3, q4));

  const SpqRational skipped = s_pq(1, 1, 4, 3, q4, TReading::kA);
  CHECK(skipped.skipped == std::vector<long>{3});
  const SpqRational kept = s_pq(1, 1, 4, 3, q4, TReading::kA, SkipPolicy::kIncludeAll);
  CHECK(kept.non_unit_terms == 1);
  CHECK(kept.skipped.empty());
  CHECK(kept.value - skipped.value == q_int(3, q4) * t_int_value(1, 3, 4, q4));

  CHECK_THROWS_AS(s_pq(1, 1, 3, 3, q4, TReading::kA), PreconditionError);
  CHECK_THROWS_AS(s_pq(1, 2, 4, 3, q4, TReading::kA), PreconditionError);
  CHECK_THROWS_AS(s_pq(2, 1, 4, 3, q4, TReading::kA), PreconditionError);
}

TEST_CASE("p-adic DC sums through the series") {
  for (long p : {3L, 5L}) {
    const PAdicContext ctx(p, 6);
    const QParam q = QParam::padic(1 + p, ctx);
    EulerCache cache;
    for (long k : {2L, 4L, 7L}) {
      for (long h = 1; h < k; ++h) {
        if (std::gcd(h, k) != 1) continue;
        const long m = p - 2;
        const SpqPAdic series = s_pq_series(PAdicInt(m, p, 6), h, k, q, ctx, &cache);
        Rational exact;
        for (long big_m = 1; big_m < k; ++big_m) {
          const long a = h * big_m % k;
          if (a % p == 0) continue;
          const Rational term = q_int(big_m, q) * distribution_sum_value(m, a, k, p, q, true, &cache);
          exact += big_m % 2 == 1 ? term : -term;
        }
        CHECK(series.value.agrees_with(to_padic(exact, ctx)));
      }
    }
  }
  // p | k goes through the series directly.
  const PAdicContext ctx(3, 6);
  const QParam q = QParam::padic(4, ctx);
  const SpqPAdic direct = s_pq_series(PAdicInt(1, 3, 6), 1, 3, q, ctx);
  CHECK(direct.skipped.empty());
  const Rational exact = t_int_A(1, 1, 3, 3, q) - q_int(2, q) * t_int_A(1, 2, 3, 3, q);
  CHECK(direct.value.agrees_with(to_padic(exact, ctx)));
}
