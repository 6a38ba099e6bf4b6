#pragma once

#include <random>
#include <vector>

#include "qdc/rational.hpp"

namespace qdc::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline long uniform(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng());
}

// Random rational with numerator in [-bound, bound] and denominator in [1, bound].
inline Rational random_rational(long bound) {
  return Rational(uniform(-bound, bound), uniform(1, bound));
}

// Random q avoiding the poles 0, 1, -1.
inline Rational random_q(long bound) {
  for (;;) {
    Rational q = random_rational(bound);
    if (q != Rational(0) && q != Rational(1) && q != Rational(-1)) return q;
  }
}

// Random q = 1 + p * u / v with p not dividing v, so that q = 1 mod p.
inline Rational random_padic_q(long p, long bound) {
  for (;;) {
    long v = uniform(1, bound);
    if (v % p == 0) continue;
    Rational q = Rational(1) + Rational(p * uniform(-bound, bound), v);
    if (q != Rational(0) && q != Rational(1) && q != Rational(-1)) return q;
  }
}

}  // namespace qdc::testing
