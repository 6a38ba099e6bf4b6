#pragma once

#include <vector>

#include "qdc/padic.hpp"
#include "qdc/q_numbers.hpp"
#include "qdc/rational.hpp"

namespace qdc {

// [N]_q^m E_{m,q^N}(a/N). The common rational kernel of both finite readings
// of T_q(m, a, N : q^N); carries no p-adic preconditions.
Rational t_int_value(long m, long a, long n, const QParam& q, EulerCache* cache = nullptr);

// (p^{-1} a)_N: the x in [0, N) with p x = a (mod N). Requires gcd(p, N) = 1.
long inverse_residue(long p, long a, long n);

// The Euler-factor term [pN]_q^m E_{m,q^{pN}}((p^{-1}a)_N / N).
Rational euler_factor_term(long m, long a, long n, long p, const QParam& q,
                           EulerCache* cache = nullptr);

// Reading A: the finite sum
//   [a]_q^m sum_{j<=m} C(m,j) q^{aj} ((1-q^N)/(1-q^a))^j E_{j,q^N},
// cross-checked against t_int_value. Needs p not dividing a and
// m + 1 = 0 mod p-1 (the Teichmuller twist then cancels).
Rational t_int_A(long m, long a, long n, long p, const QParam& q, EulerCache* cache = nullptr);

// Reading B: reading A with the Euler factor at p removed,
//   t_int_value(m, a, N) - euler_factor_term(m, a, N, p).
// Needs additionally gcd(p, N) = 1.
Rational t_int_B(long m, long a, long n, long p, const QParam& q, EulerCache* cache = nullptr);

// The Teichmuller-twisted series
//   w^{-1}(a) <a>^s sum_j C(s,j) q^{aj} ((1-q^N)/(1-q^a))^j E_{j,q^N}
// for s in Z_p, truncated once the guaranteed size of every remaining term
// reaches ctx.digits(). Needs p | N, p not dividing a and q = 1 mod p.
PAdicApprox t_series(const PAdicInt& s, long a, long n, const QParam& q, const PAdicContext& ctx,
                     EulerCache* cache = nullptr);

// The unique i in [0, p) with p | a + iN; requires p not dividing N.
long removed_index(long a, long n, long p);

// Extension to p not dividing N through modulus pN:
//   (1+q^N)/(1+q^{pN}) sum_{i : p !| a+iN} (-1)^i T_q(s, (a+iN)_{pN}, pN : q^{pN}).
PAdicApprox t_extended(const PAdicInt& s, long a, long n, const QParam& q, const PAdicContext& ctx,
                       EulerCache* cache = nullptr);

// The same distribution sum at an integer s = m with every inner T evaluated
// by the rational kernel; `restricted` drops the p-divisible index.
Rational distribution_sum_value(long m, long a, long n, long p, const QParam& q, bool restricted,
                                EulerCache* cache = nullptr);

enum class TReading { kA, kB };

// How s_pq treats indices M whose T-argument (hM)_k is divisible by p.
enum class SkipPolicy {
  kSkipNonUnits,  // drop them and record the index
  kIncludeAll,    // evaluate them through the rational kernel and count them
};

struct SpqRational {
  Rational value;
  std::vector<long> skipped;  // indices M that were dropped
  long non_unit_terms = 0;    // indices M kept although p | (hM)_k
};

struct SpqPAdic {
  PAdicApprox value;
  std::vector<long> skipped;
};

// S_{p,q}(m : h, k : q^k) = sum_M [M]_q (-1)^{M-1} T_q(m, (hM)_k, k : q^k)
// with T read as A or B.
SpqRational s_pq(long m, long h, long k, long p, const QParam& q, TReading reading,
                 SkipPolicy policy = SkipPolicy::kSkipNonUnits, EulerCache* cache = nullptr);

// The same sum for s in Z_p, T evaluated by t_series when p | k and by
// t_extended otherwise. Indices with p | (hM)_k are always skipped.
SpqPAdic s_pq_series(const PAdicInt& s, long h, long k, const QParam& q, const PAdicContext& ctx,
                     EulerCache* cache = nullptr);

}  // namespace qdc
