#include <doctest.h>

#include "qdc/errors.hpp"
#include "qdc/padic.hpp"
#include "qdc/rational.hpp"
#include "support.hpp"

using namespace qdc;
using qdc::testing::random_rational;
using qdc::testing::uniform;

TEST_CASE("rational canonical form and parsing") {
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(6, 3).to_string() == "2/1");
  CHECK(Rational::parse("-3/6") == Rational(-1, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK_THROWS_AS(Rational::parse("1/0"), PreconditionError);
  CHECK_THROWS_AS(Rational::parse("abc"), PreconditionError);
  CHECK_THROWS_AS(Rational(1, 0), PoleError);
  CHECK_THROWS_AS(Rational(0).inverse(), PoleError);
  CHECK(Rational(2).pow(-3) == Rational(1, 8));
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).frac() == Rational(1, 2));
}

TEST_CASE("binomial and factorial") {
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(5, 7) == 0);
  CHECK(factorial(10) == 3628800);
}

TEST_CASE("rational field axioms on random samples") {
  for (int i = 0; i < 300; ++i) {
    const Rational a = random_rational(50);
    const Rational b = random_rational(50);
    const Rational c = random_rational(50);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a - a == Rational(0));
    if (!b.is_zero()) CHECK(a / b * b == a);
    CHECK(Rational::parse(a.to_string()) == a);
  }
}

TEST_CASE("valuations") {
  CHECK(vp(Rational(9, 4), 3) == Valuation(2));
  CHECK(vp(Rational(2, 27), 3) == Valuation(-3));
  CHECK(vp(Rational(0), 3).is_infinite());
  CHECK(vp_factorial(10, 3) == 4);
  CHECK(vp_factorial(25, 5) == 6);
  CHECK_THROWS(Valuation::infinity().value());
  CHECK(Valuation::infinity().to_string() == "inf");
  for (int i = 0; i < 200; ++i) {
    const Rational a = random_rational(500);
    const Rational b = random_rational(500);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK(vp(a * b, 5) == vp(a, 5) + vp(b, 5));
    CHECK(vp(a + b, 5) >= std::min(vp(a, 5), vp(b, 5)));
  }
}

TEST_CASE("to_padic examples") {
  const PAdicApprox half = to_padic(Rational(1, 2), PAdicContext(3, 2));
  CHECK(half.valuation() == Valuation(0));
  CHECK(half.unit() == 5);
  const PAdicApprox x = to_padic(Rational(9, 4), PAdicContext(3, 2));
  CHECK(x.valuation() == Valuation(2));
  CHECK(x.unit() == 7);
  CHECK(x.absolute_precision() == 4);
  CHECK(congruent(Rational(1, 2), Rational(5), 3, 2));
  CHECK_FALSE(congruent(Rational(1, 2), Rational(5), 3, 3));
}

TEST_CASE("context validation") {
  CHECK_THROWS_AS(PAdicContext(2, 4), PreconditionError);
  CHECK_THROWS_AS(PAdicContext(9, 4), PreconditionError);
  CHECK_THROWS_AS(PAdicContext(5, 0), PreconditionError);
  CHECK(PAdicContext(5, 3).modulus() == 125);
}

TEST_CASE("p-adic arithmetic is a ring map from rationals") {
  for (long p : {3L, 5L, 7L}) {
    const PAdicContext ctx(p, 6);
    for (int i = 0; i < 150; ++i) {
      Rational a = random_rational(200);
      Rational b = random_rational(200);
      if (vp(a, p) < Valuation(-2) || vp(b, p) < Valuation(-2)) continue;
      const PAdicApprox pa = to_padic(a, ctx);
      const PAdicApprox pb = to_padic(b, ctx);
      CHECK((pa + pb).agrees_with(to_padic(a + b, ctx)));
      CHECK((pa - pb).agrees_with(to_padic(a - b, ctx)));
      CHECK((pa * pb).agrees_with(to_padic(a * b, ctx)));
      if (!b.is_zero()) CHECK((pa / pb).agrees_with(to_padic(a / b, ctx)));
    }
  }
}

TEST_CASE("precision bookkeeping") {
  const PAdicContext ctx(3, 5);
  const PAdicApprox a = to_padic(Rational(1), ctx);
  const PAdicApprox b = to_padic(Rational(1 + 243 * 2), ctx);
  const PAdicApprox diff = a - b;
  CHECK(diff.is_zero());
  CHECK(diff.absolute_precision() == 5);
  CHECK_THROWS_AS(a / diff, PrecisionError);
  const PAdicApprox c = to_padic(Rational(1), ctx) - to_padic(Rational(10), ctx);
  CHECK(c.valuation() == Valuation(2));
  CHECK(c.relative_precision() == 3);
  CHECK(a.distance(to_padic(Rational(10), ctx)) == Valuation(2));
  CHECK(to_padic(Rational(1), ctx).truncated(2).absolute_precision() == 2);
}

TEST_CASE("teichmuller lift") {
  const PAdicApprox w = teichmuller(2, PAdicContext(5, 2));
  CHECK(w.residue() == 7);
  CHECK(teichmuller(2, PAdicContext(3, 4)).residue() == ipow(3, 4) - 1);
  CHECK_THROWS_AS(teichmuller(5, PAdicContext(5, 3)), PreconditionError);
  for (long p : {3L, 5L, 7L, 11L}) {
    const PAdicContext ctx(p, 6);
    for (long a = 1; a < 3 * p; ++a) {
      if (a % p == 0) continue;
      const PAdicApprox t = teichmuller(a, ctx);
      CHECK(congruent(Rational(t.residue()), Rational(a), p, 1));
      CHECK(t.pow(p - 1).agrees_with(to_padic(Rational(1), ctx)));
      CHECK(t.pow(p).agrees_with(t));
    }
  }
}

TEST_CASE("p-adic binomial agrees with exact binomial at integers") {
  for (long p : {3L, 5L}) {
    for (int i = 0; i < 40; ++i) {
      const long s = uniform(0, 60);
      const long j = uniform(0, 12);
      const PAdicInt ps(s, p, 8);
      const PAdicApprox c = padic_binom(ps, j);
      CHECK(c.absolute_precision() == 8 - vp_factorial(j, p));
      CHECK(c.agrees_with(to_padic(Rational(binomial(s, j)), PAdicContext(p, 8))));
    }
  }
  // A negative integer s = -1 gives C(-1, j) = (-1)^j.
  const PAdicInt minus_one(-1, 3, 6);
  CHECK(padic_binom(minus_one, 5).agrees_with(to_padic(Rational(-1), PAdicContext(3, 6))));
  CHECK_THROWS_AS(padic_binom(PAdicInt(1, 3, 2), 9), PrecisionError);
}
