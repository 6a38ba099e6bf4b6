#include "qdc/fermionic.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "qdc/errors.hpp"

namespace qdc {

namespace {

constexpr long kChunk = 256;

long checked_cylinders(long p, long level) {
  long count = 1;
  for (long i = 0; i < level; ++i) {
    if (count > kMaxCylinders / p) {
      throw ResourceError("p^N = " + std::to_string(p) + "^" + std::to_string(level) +
                          " exceeds the desk-scale cap of " + std::to_string(kMaxCylinders));
    }
    count *= p;
  }
  return count;
}

}  // namespace

MeasureLevel::MeasureLevel(const PAdicContext& ctx, long level, const QParam& q)
    : ctx_(ctx), level_(level), q_(q) {
  require(level >= 1, "measure level N must be at least 1");
  require(vp(Rational(1) - q.value(), ctx.p()) >= Valuation(1),
          "the q-measure needs q = 1 mod p, got q = " + q.to_string());
  cylinders_ = checked_cylinders(ctx.p(), level);
  const Rational denom = Rational(1) + q.pow(cylinders_);
  if (denom.is_zero()) throw PoleError("q^{p^N} = -1");
  mass_factor_ = (Rational(1) + q.value()) / denom;
}

Rational measure(long a, const MeasureLevel& lvl) {
  require(a >= 0 && a < lvl.cylinders(), "cylinder index out of range [0, p^N)");
  return lvl.mass_factor() * (-lvl.q().value()).pow(a);
}

Integrand bracket_power(long m, const QParam& q) {
  return {"[x]_q^" + std::to_string(m), [m, q](long x) { return q_int(x, q).pow(m); }};
}

Integrand twisted_bracket_power(long m, const QParam& q) {
  return {"q^-x [x]_q^" + std::to_string(m),
          [m, q](long x) { return q.pow(-x) * q_int(x, q).pow(m); }};
}

Integrand shifted_twisted_bracket_power(long m, long x, const QParam& q) {
  return {"q^-t [" + std::to_string(x) + "+t]_q^" + std::to_string(m),
          [m, x, q](long t) { return q.pow(-t) * q_int(x + t, q).pow(m); }};
}

Integrand base_changed_bracket_power(long m, long a, long base_exp, const QParam& q) {
  // [t + a/N]_{q^N} = (1 - q^{N t + a}) / (1 - q^N)
  return {"q^-Nt [t+" + std::to_string(a) + "/" + std::to_string(base_exp) + "]_{q^N}^" +
              std::to_string(m),
          [m, a, base_exp, q](long t) {
            const Rational bracket = (Rational(1) - q.pow(base_exp * t + a)) /
                                     (Rational(1) - q.pow(base_exp));
            return q.pow(-base_exp * t) * bracket.pow(m);
          }};
}

Rational integrate_riemann(const Integrand& f, const MeasureLevel& lvl, unsigned threads) {
  const long total = lvl.cylinders();
  const long chunks = (total + kChunk - 1) / kChunk;
  const Rational minus_q = -lvl.q().value();
  std::vector<Rational> partial(static_cast<std::size_t>(chunks));

  auto run_chunk = [&](long c) {
    const long begin = c * kChunk;
    const long end = std::min(total, begin + kChunk);
    Rational weight = minus_q.pow(begin);
    Rational acc;
    for (long x = begin; x < end; ++x) {
      acc += f.eval(x) * weight;
      weight *= minus_q;
    }
    partial[static_cast<std::size_t>(c)] = std::move(acc);
  };

  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (workers == 1) {
    for (long c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<long> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (long c = next++; c < chunks; c = next++) run_chunk(c);
      });
    }
  }

  Rational sum;
  for (const Rational& part : partial) sum += part;
  return sum * lvl.mass_factor();
}

bool ConvergenceTrace::target_nondecreasing() const {
  std::optional<Valuation> prev;
  for (const Row& row : rows) {
    if (!row.vp_target) return false;
    if (prev && *row.vp_target < *prev) return false;
    prev = row.vp_target;
  }
  return true;
}

ConvergenceTrace convergence_trace(const Integrand& f, long max_level, const MeasureLevel& lvl,
                                   const std::optional<Rational>& target, unsigned threads) {
  require(max_level >= 1, "trace needs at least one level");
  checked_cylinders(lvl.context().p(), max_level);
  ConvergenceTrace trace;
  for (long n = 1; n <= max_level; ++n) {
    const MeasureLevel level(lvl.context(), n, lvl.q());
    ConvergenceTrace::Row row{n, integrate_riemann(f, level, threads), std::nullopt, std::nullopt};
    if (!trace.rows.empty()) row.vp_step = vp(row.value - trace.rows.back().value, level.context().p());
    if (target) row.vp_target = vp(row.value - *target, level.context().p());
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

}  // namespace qdc
