#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qdc/padic.hpp"
#include "qdc/q_numbers.hpp"
#include "qdc/rational.hpp"

namespace qdc {

// Desk-scale bound on the number of cylinders p^N summed over.
inline constexpr long kMaxCylinders = 1'000'000;

// The fermionic q-measure at level N: cylinders a + p^N Z_p with
// mass (1+q)(-q)^a / (1 + q^{p^N}).
class MeasureLevel {
 public:
  MeasureLevel(const PAdicContext& ctx, long level, const QParam& q);

  const PAdicContext& context() const { return ctx_; }
  long level() const { return level_; }
  const QParam& q() const { return q_; }
  // p^N
  long cylinders() const { return cylinders_; }

  // (1+q) / (1 + q^{p^N}); the mass of cylinder a is this times (-q)^a.
  const Rational& mass_factor() const { return mass_factor_; }

  MeasureLevel refined() const { return MeasureLevel(ctx_, level_ + 1, q_); }

 private:
  PAdicContext ctx_;
  long level_;
  QParam q_;
  long cylinders_;
  Rational mass_factor_;
};

Rational measure(long a, const MeasureLevel& lvl);

// A function on {0, ..., p^N - 1}. Built-in families cover every integrand
// the theory uses; arbitrary callables are accepted too.
struct Integrand {
  std::string label;
  std::function<Rational(long)> eval;
};

// [x]_q^m: integrates to the Carlitz number.
Integrand bracket_power(long m, const QParam& q);
// q^{-x} [x]_q^m: integrates to the modified number E_{m,q}.
Integrand twisted_bracket_power(long m, const QParam& q);
// q^{-t} [x + t]_q^m: integrates to E_{m,q}(x).
Integrand shifted_twisted_bracket_power(long m, long x, const QParam& q);
// q^{-N t} [t + a/N]_{q^N}^m, to be integrated against mu_{q^N}: gives
// E_{m,q^N}(a/N).
Integrand base_changed_bracket_power(long m, long a, long base_exp, const QParam& q);

// sum_{x < p^N} f(x) mu_q(x + p^N Z_p), exactly. Work is split into
// fixed-size chunks combined in index order, so the value does not depend on
// `threads`.
Rational integrate_riemann(const Integrand& f, const MeasureLevel& lvl, unsigned threads = 1);

struct ConvergenceTrace {
  struct Row {
    long level;
    Rational value;
    // vp(value_N - value_{N-1}); absent on the first row.
    std::optional<Valuation> vp_step;
    // vp(value_N - target) when a target was supplied.
    std::optional<Valuation> vp_target;
  };
  std::vector<Row> rows;

  bool target_nondecreasing() const;
};

// Partial integrals at N = 1..max_level. The level stored in `lvl` is ignored.
ConvergenceTrace convergence_trace(const Integrand& f, long max_level, const MeasureLevel& lvl,
                                   const std::optional<Rational>& target = std::nullopt,
                                   unsigned threads = 1);

}  // namespace qdc
