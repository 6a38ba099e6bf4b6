#pragma once

#include "qdc/q_numbers.hpp"
#include "qdc/rational.hpp"

namespace qdc {

// S_m(h,k) = sum_{M=1}^{k-1} (-1)^{M-1} (M/k) Ebar_m(hM/k).
Rational dc_sum_classical(long m, long h, long k);

// q-analogue S_{m,q}(h,k : q^l)
//   = sum_{M=1}^{k-1} (-1)^{M-1} (1-q^M)/(1-q^k) E_{m,q^l}({hM/k}).
// Requires k | l so that every power of q is integral.
Rational dc_sum_q(long m, long h, long k, long l, const QParam& q, EulerCache* cache = nullptr);

// k^m S_{m+1}(h,k).
Rational higher_order_dc(long m, long h, long k);

}  // namespace qdc
