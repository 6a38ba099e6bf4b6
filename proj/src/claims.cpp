#include "qdc/claims.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <thread>

#include "qdc/dedekind.hpp"
#include "qdc/errors.hpp"
#include "qdc/fermionic.hpp"
#include "qdc/interpolation.hpp"
#include "qdc/q_numbers.hpp"

namespace qdc {

namespace {

struct ClaimInfo {
  ClaimId id;
  std::string_view name;
};

constexpr ClaimInfo kClaims[] = {
    {ClaimId::kMeasureAdditivity, "measure-additivity"},
    {ClaimId::kEq1, "eq1"},
    {ClaimId::kEq2, "eq2"},
    {ClaimId::kEq3, "eq3"},
    {ClaimId::kEq4, "eq4"},
    {ClaimId::kRestrictedSum, "restricted-sum"},
    {ClaimId::kSubtractionVsInParticular, "subtraction-vs-inparticular"},
    {ClaimId::kEq5A, "eq5-A"},
    {ClaimId::kEq5B, "eq5-B"},
    {ClaimId::kKummer, "kummer"},
    {ClaimId::kOracle, "oracle"},
};

using Job = std::function<ClaimInstance()>;
using Params = std::vector<std::pair<std::string, ParamValue>>;

template <typename T>
std::vector<T> or_default(const std::vector<T>& given, std::vector<T> fallback) {
  return given.empty() ? std::move(fallback) : given;
}

std::vector<long> range(long lo, long hi) {
  std::vector<long> out;
  for (long i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

std::vector<long> coprime_residues(long k, const std::vector<long>& given) {
  if (!given.empty()) return given;
  std::vector<long> out;
  for (long h = 1; h < k; ++h) {
    if (std::gcd(h, k) == 1) out.push_back(h);
  }
  return out;
}

std::vector<Rational> qs_for(const Sweep& sweep, const std::vector<Rational>& fallback) {
  if (!sweep.qs.empty()) return sweep.qs;
  std::vector<Rational> out;
  for (const Rational& q : fallback) {
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  }
  return out;
}

// m with m + 1 = 0 mod p - 1, the weights at which T is rational.
std::vector<long> twist_free_weights(long p) { return {p - 2, 2 * p - 3}; }

ClaimInstance skipped(Params params, std::string reason) {
  ClaimInstance inst;
  inst.params = std::move(params);
  inst.verdict = Verdict::kSkipped;
  inst.skipped_reason = std::move(reason);
  return inst;
}

ClaimInstance compare_rational(Params params, const Rational& lhs, const Rational& rhs,
                               std::optional<long> p) {
  ClaimInstance inst;
  inst.params = std::move(params);
  inst.lhs = lhs;
  inst.rhs = rhs;
  inst.exact_equal = lhs == rhs;
  if (p) inst.vp_diff = vp(lhs - rhs, *p);
  if (!inst.exact_equal) inst.discrepancy = lhs - rhs;
  inst.verdict = inst.exact_equal ? Verdict::kPass : Verdict::kFail;
  return inst;
}

ClaimInstance compare_padic(Params params, const PAdicApprox& lhs, const PAdicApprox& rhs) {
  ClaimInstance inst;
  inst.params = std::move(params);
  inst.lhs = lhs;
  inst.rhs = rhs;
  inst.exact_equal = lhs.agrees_with(rhs);
  inst.vp_diff = lhs.distance(rhs);
  inst.verdict = inst.exact_equal ? Verdict::kPass : Verdict::kFail;
  return inst;
}

// Runs `make` and turns precondition, pole and precision failures into a
// recorded skip. Internal consistency failures (logic_error) propagate.
ClaimInstance guarded(const Params& params, const std::function<ClaimInstance()>& make) {
  try {
    return make();
  } catch (const PreconditionError& e) {
    return skipped(params, std::string("precondition: ") + e.what());
  } catch (const PoleError& e) {
    return skipped(params, std::string("pole: ") + e.what());
  } catch (const PrecisionError& e) {
    return skipped(params, std::string("precision: ") + e.what());
  } catch (const ResourceError& e) {
    return skipped(params, std::string("resource: ") + e.what());
  }
}

Job job(Params params, std::function<ClaimInstance(Params)> body) {
  return [params = std::move(params), body = std::move(body)]() {
    return guarded(params, [&] { return body(params); });
  };
}

Params base_params(long p, const Rational& q) {
  return {{"p", p}, {"q", q.to_string()}};
}

QParam make_q(const Rational& q, long p, long digits = 8) {
  if (vp(Rational(1) - q, p) >= Valuation(1)) return QParam::padic(q, PAdicContext(p, digits));
  return QParam::algebraic(q);
}

// --- measure-additivity -----------------------------------------------------

std::vector<Job> measure_jobs(const Sweep& sweep) {
  std::vector<Job> jobs;
  const long max_level = sweep.max_level > 0 ? sweep.max_level : 4;
  for (long p : or_default(sweep.primes, {3, 5, 7})) {
    for (const Rational& q : qs_for(sweep, {Rational(1 + p), Rational(1 + p * p), Rational(1 - p)})) {
      for (long n = 1; n <= max_level; ++n) {
        Params total = base_params(p, q);
        total.emplace_back("kind", "total-mass");
        total.emplace_back("N", n);
        jobs.push_back(job(total, [p, q, n](Params params) {
          const MeasureLevel lvl(PAdicContext(p, 1), n, QParam::algebraic(q));
          Rational mass;
          const Rational minus_q = -q;
          Rational weight = 1;
          for (long a = 0; a < lvl.cylinders(); ++a) {
            mass += weight;
            weight *= minus_q;
          }
          return compare_rational(std::move(params), mass * lvl.mass_factor(), Rational(1), p);
        }));
        if (n == max_level) continue;
        // Parent cylinder a at level N against its p children a + i p^N.
        Params refine = base_params(p, q);
        refine.emplace_back("kind", "refinement");
        refine.emplace_back("N", n);
        jobs.push_back(job(refine, [p, q, n](Params params) {
          const MeasureLevel parent(PAdicContext(p, 1), n, QParam::algebraic(q));
          const MeasureLevel child = parent.refined();
          const Rational minus_q = -q;
          std::vector<Rational> children(static_cast<std::size_t>(parent.cylinders()));
          Rational weight = child.mass_factor();
          for (long b = 0; b < child.cylinders(); ++b) {
            children[static_cast<std::size_t>(b % parent.cylinders())] += weight;
            weight *= minus_q;
          }
          bool all_equal = true;
          Rational lhs_moment;
          Rational rhs_moment;
          weight = parent.mass_factor();
          for (long a = 0; a < parent.cylinders(); ++a) {
            const Rational& sum = children[static_cast<std::size_t>(a)];
            all_equal = all_equal && sum == weight;
            lhs_moment += Rational(a) * weight;
            rhs_moment += Rational(a) * sum;
            weight *= minus_q;
          }
          params.emplace_back("cylinders", parent.cylinders());
          params.emplace_back("moment", "sum_a a * mass(a)");
          ClaimInstance inst = compare_rational(std::move(params), lhs_moment, rhs_moment, p);
          inst.exact_equal = inst.exact_equal && all_equal;
          inst.verdict = inst.exact_equal ? Verdict::kPass : Verdict::kFail;
          return inst;
        }));
      }
    }
  }
  return jobs;
}

// --- oracle -----------------------------------------------------------------

std::vector<Job> oracle_jobs(const Sweep& sweep, EulerCache& cache) {
  std::vector<Job> jobs;
  const long max_level = sweep.max_level > 0 ? sweep.max_level : 6;
  const long threshold = max_level - 2;
  for (long p : or_default(sweep.primes, {3})) {
    for (const Rational& q : qs_for(sweep, {Rational(1 + p)})) {
      struct Family {
        std::string name;
        long shift;
      };
      std::vector<Family> families = {{"modified", 0}, {"carlitz", 0}};
      for (long x : or_default(sweep.xs, {1, 2})) families.push_back({"shifted", x});
      for (const Family& fam : families) {
        for (long m : or_default(sweep.ms, range(0, 4))) {
          Params params = base_params(p, q);
          params.emplace_back("family", fam.name);
          if (fam.name == "shifted") params.emplace_back("x", fam.shift);
          params.emplace_back("m", m);
          params.emplace_back("maxN", max_level);
          params.emplace_back("threshold", threshold);
          jobs.push_back(job(params, [p, q, m, fam, max_level, threshold, &cache](Params prm) {
            const QParam qp = QParam::padic(q, PAdicContext(p, 1));
            Rational closed;
            Integrand f;
            if (fam.name == "modified") {
              closed = cache.modified(m, qp);
              f = twisted_bracket_power(m, qp);
            } else if (fam.name == "carlitz") {
              closed = cache.carlitz(m, qp);
              f = bracket_power(m, qp);
            } else {
              closed = q_euler_poly(m, QBracketArg::integer(fam.shift), qp, &cache);
              f = shifted_twisted_bracket_power(m, fam.shift, qp);
            }
            const MeasureLevel lvl(PAdicContext(p, 1), 1, qp);
            const ConvergenceTrace trace = convergence_trace(f, max_level, lvl, closed);
            std::string vps;
            for (const auto& row : trace.rows) {
              if (!vps.empty()) vps += ",";
              vps += row.vp_target->to_string();
            }
            prm.emplace_back("vp_trace", vps);
            ClaimInstance inst =
                compare_rational(std::move(prm), closed, trace.rows.back().value, p);
            const bool converging = trace.target_nondecreasing() &&
                                    *trace.rows.back().vp_target >= Valuation(threshold);
            inst.verdict = converging ? Verdict::kPass : Verdict::kFail;
            return inst;
          }));
        }
      }
    }
  }
  return jobs;
}

// --- DC-sum identities ------------------------------------------------------

struct DcPoint {
  long p;
  Rational q;
  long k;
  long h;
  long m;
};

// p in {3,5}, k coprime to p, all h coprime to k, m in {p-2, 2p-3}.
std::vector<DcPoint> dc_grid(const Sweep& sweep, bool p_divides_k) {
  std::vector<DcPoint> out;
  for (long p : or_default(sweep.primes, {3, 5})) {
    std::vector<long> ks = sweep.ks;
    if (ks.empty()) ks = p_divides_k ? std::vector<long>{p, 2 * p} : std::vector<long>{2, 3, 4, 5, 7};
    for (const Rational& q : qs_for(sweep, {Rational(2), Rational(1 + p), Rational(-1, 3)})) {
      for (long k : ks) {
        if (!sweep.ks.empty() || (k % p == 0) == p_divides_k) {
          for (long h : coprime_residues(k, sweep.hs)) {
            for (long m : or_default(sweep.ms, twist_free_weights(p))) out.push_back({p, q, k, h, m});
          }
        }
      }
    }
  }
  return out;
}

Params dc_params(const DcPoint& pt) {
  Params params = base_params(pt.p, pt.q);
  params.emplace_back("k", pt.k);
  params.emplace_back("h", pt.h);
  params.emplace_back("m", pt.m);
  return params;
}

long count_p_divisible(long h, long k, long p) {
  long count = 0;
  for (long big_m = 1; big_m < k; ++big_m) {
    if ((h * big_m) % p == 0) ++count;
  }
  return count;
}

std::vector<Job> eq1_jobs(const Sweep& sweep, EulerCache& cache) {
  std::vector<Job> jobs;
  for (const DcPoint& pt : dc_grid(sweep, true)) {
    jobs.push_back(job(dc_params(pt), [pt, &cache](Params params) {
      require(pt.k % pt.p == 0, "this identity is stated for p | k");
      require(std::gcd(pt.h, pt.k) == 1, "h and k must be coprime");
      const QParam q = make_q(pt.q, pt.p);
      const Rational bracket_k = q_int(pt.k, q);
      Rational lhs;
      Rational rhs;
      for (long big_m = 1; big_m < pt.k; ++big_m) {
        const Rational e =
            q_euler_poly(pt.m, QBracketArg::fraction(pt.h * big_m, pt.k), q, &cache);
        const long sign = big_m % 2 == 1 ? 1 : -1;
        lhs += Rational(sign) * (Rational(1) - q.pow(big_m)) / (Rational(1) - q.pow(pt.k)) * e;
        rhs += Rational(sign) * q_int(big_m, q) * bracket_k.pow(pt.m) * e;
      }
      lhs *= bracket_k.pow(pt.m + 1);
      params.emplace_back("p_divisible_hM", count_p_divisible(pt.h, pt.k, pt.p));
      return compare_rational(std::move(params), lhs, rhs, pt.p);
    }));
  }
  return jobs;
}

std::vector<Job> eq2_jobs(const Sweep& sweep, EulerCache& cache) {
  std::vector<Job> jobs;
  for (const DcPoint& pt : dc_grid(sweep, false)) {
    jobs.push_back(job(dc_params(pt), [pt, &cache](Params params) {
      const QParam q = make_q(pt.q, pt.p);
      const Rational lhs =
          q_int(pt.k, q).pow(pt.m + 1) * dc_sum_q(pt.m, pt.h, pt.k, pt.k, q, &cache);
      const SpqRational rhs =
          s_pq(pt.m, pt.h, pt.k, pt.p, q, TReading::kA, SkipPolicy::kIncludeAll, &cache);
      params.emplace_back("policy", "include-all");
      params.emplace_back("non_unit_terms", rhs.non_unit_terms);
      return compare_rational(std::move(params), lhs, rhs.value, pt.p);
    }));
  }
  return jobs;
}

std::vector<Job> eq5_jobs(const Sweep& sweep, EulerCache& cache, TReading reading) {
  std::vector<Job> jobs;
  for (const DcPoint& pt : dc_grid(sweep, false)) {
    jobs.push_back(job(dc_params(pt), [pt, reading, &cache](Params params) {
      const QParam q = make_q(pt.q, pt.p);
      const SpqRational lhs =
          s_pq(pt.m, pt.h, pt.k, pt.p, q, reading, SkipPolicy::kIncludeAll, &cache);
      const Rational scale = q_int(pt.k, q).pow(pt.m + 1);
      const long h_prime = inverse_residue(pt.p, pt.h, pt.k);
      const Rational p_bracket = (Rational(1) - q.pow(pt.p * pt.k)) / (Rational(1) - q.pow(pt.k));
      const Rational main = scale * dc_sum_q(pt.m, pt.h, pt.k, pt.k, q, &cache);
      const Rational correction =
          scale * p_bracket.pow(pt.m) * dc_sum_q(pt.m, h_prime, pt.k, pt.p * pt.k, q, &cache);
      params.emplace_back("policy", "include-all");
      params.emplace_back("non_unit_terms", lhs.non_unit_terms);
      params.emplace_back("h_prime", h_prime);
      ClaimInstance inst = compare_rational(std::move(params), lhs.value, main - correction, pt.p);
      inst.condition = !correction.is_zero();
      return inst;
    }));
  }
  return jobs;
}

// --- distribution relations -------------------------------------------------

std::vector<Job> eq3_jobs(const Sweep& sweep, EulerCache& cache) {
  std::vector<Job> jobs;
  struct Point {
    Rational q;
    long d;
    long n;
    long x;
  };
  std::vector<Point> grid;
  const std::vector<Rational> qs = or_default(sweep.qs, {Rational(2), Rational(4), Rational(6)});
  for (const Rational& q : qs) {
    for (long d : or_default(sweep.ds, {1, 3, 5})) {
      for (long n : or_default(sweep.ns, range(0, 6))) {
        for (long x : or_default(sweep.xs, {0, 1, 2})) grid.push_back({q, d, n, x});
      }
    }
  }
  // One even modulus documents where the alternating relation breaks.
  if (sweep.ds.empty()) grid.push_back({qs.front(), 2, 1, 0});

  for (const Point& pt : grid) {
    Params params{{"q", pt.q.to_string()}, {"d", pt.d}, {"n", pt.n}, {"x", pt.x}};
    jobs.push_back(job(params, [pt, &cache](Params prm) {
      require(pt.d >= 1, "modulus d must be positive");
      const QParam q = QParam::algebraic(pt.q);
      const Rational lhs = q_euler_poly(pt.n, QBracketArg::integer(pt.x), q, &cache);
      Rational sum;
      for (long i = 0; i < pt.d; ++i) {
        const Rational e = q_euler_poly(pt.n, QBracketArg::fraction(pt.x + i, pt.d), q, &cache);
        sum += i % 2 == 0 ? e : -e;
      }
      const Rational rhs = q_int(pt.d, q).pow(pt.n) * (Rational(1) + q.value()) /
                           (Rational(1) + q.pow(pt.d)) * sum;
      ClaimInstance inst = compare_rational(std::move(prm), lhs, rhs, std::nullopt);
      inst.condition = pt.d % 2 == 1;
      return inst;
    }));
  }
  return jobs;
}

std::vector<Job> eq4_jobs(const Sweep& sweep, EulerCache& cache) {
  std::vector<Job> jobs;
  for (long p : or_default(sweep.primes, {3, 5})) {
    for (const Rational& q : qs_for(sweep, {Rational(2), Rational(1 + p)})) {
      for (long n : or_default(sweep.big_ns, {1, 2, 3, 4})) {
        for (long a : or_default(sweep.as, {1, 2, 3})) {
          for (long m : or_default(sweep.ms, range(0, 4))) {
            Params params = base_params(p, q);
            params.emplace_back("N", n);
            params.emplace_back("a", a);
            params.emplace_back("m", m);
            jobs.push_back(job(params, [p, q, n, a, m, &cache](Params prm) {
              const QParam qp = make_q(q, p);
              const Rational lhs = t_int_value(m, a, n, qp, &cache);
              Rational sum;
              for (long i = 0; i < p; ++i) {
                const Rational t = t_int_value(m, a + i * n, p * n, qp, &cache);
                sum += i % 2 == 0 ? t : -t;
              }
              const Rational rhs =
                  (Rational(1) + qp.pow(n)) / (Rational(1) + qp.pow(p * n)) * sum;
              return compare_rational(std::move(prm), lhs, rhs, p);
            }));
          }
        }
      }
    }
  }
  return jobs;
}

struct ExtensionPoint {
  long p;
  Rational q;
  long n;
  long a;
  long m;
};

// p not dividing N, 0 < a < N with p not dividing a.
std::vector<ExtensionPoint> extension_grid(const Sweep& sweep, bool include_q2) {
  std::vector<ExtensionPoint> out;
  for (long p : or_default(sweep.primes, {3, 5})) {
    std::vector<Rational> qs;
    if (include_q2) qs.push_back(Rational(2));
    qs.push_back(Rational(1 + p));
    for (const Rational& q : qs_for(sweep, qs)) {
      for (long n : or_default(sweep.big_ns, {2, 4, 5, 7})) {
        if (n % p == 0) continue;
        std::vector<long> as = sweep.as;
        if (as.empty()) {
          for (long a = 1; a < n; ++a) {
            if (a % p != 0) as.push_back(a);
          }
        }
        for (long a : as) {
          for (long m : or_default(sweep.ms, twist_free_weights(p))) out.push_back({p, q, n, a, m});
        }
      }
    }
  }
  return out;
}

Params extension_params(const ExtensionPoint& pt) {
  Params params = base_params(pt.p, pt.q);
  params.emplace_back("N", pt.n);
  params.emplace_back("a", pt.a);
  params.emplace_back("m", pt.m);
  return params;
}

std::vector<Job> restricted_sum_jobs(const Sweep& sweep, EulerCache& cache) {
  std::vector<Job> jobs;
  const std::vector<long> digit_list = or_default(sweep.digits, {6});
  for (const ExtensionPoint& pt : extension_grid(sweep, false)) {
    Params unrestricted = extension_params(pt);
    unrestricted.emplace_back("form", "unrestricted");
    jobs.push_back(job(unrestricted, [pt, &cache](Params params) {
      require(pt.a >= 1 && pt.a < pt.n, "needs 0 < a < N");
      const QParam q = make_q(pt.q, pt.p);
      params.emplace_back("removed_index", removed_index(pt.a, pt.n, pt.p));
      const Rational lhs = distribution_sum_value(pt.m, pt.a, pt.n, pt.p, q, false, &cache);
      return compare_rational(std::move(params), lhs, t_int_A(pt.m, pt.a, pt.n, pt.p, q, &cache),
                              pt.p);
    }));
    for (long digits : digit_list) {
      Params series = extension_params(pt);
      series.emplace_back("form", "series");
      series.emplace_back("K", digits);
      jobs.push_back(job(series, [pt, digits, &cache](Params params) {
        const PAdicContext ctx(pt.p, digits);
        const QParam q = QParam::padic(pt.q, ctx);
        params.emplace_back("removed_index", removed_index(pt.a, pt.n, pt.p));
        const PAdicApprox lhs =
            t_extended(PAdicInt(pt.m, pt.p, digits), pt.a, pt.n, q, ctx, &cache);
        const PAdicApprox rhs =
            to_padic(distribution_sum_value(pt.m, pt.a, pt.n, pt.p, q, true, &cache), ctx);
        return compare_padic(std::move(params), lhs, rhs);
      }));
    }
  }
  return jobs;
}

std::vector<Job> subtraction_jobs(const Sweep& sweep, EulerCache& cache) {
  std::vector<Job> jobs;
  for (const ExtensionPoint& pt : extension_grid(sweep, true)) {
    jobs.push_back(job(extension_params(pt), [pt, &cache](Params params) {
      require(pt.a >= 1 && pt.a < pt.n, "needs 0 < a < N");
      const QParam q = make_q(pt.q, pt.p);
      params.emplace_back("removed_index", removed_index(pt.a, pt.n, pt.p));
      const Rational restricted = distribution_sum_value(pt.m, pt.a, pt.n, pt.p, q, true, &cache);
      return compare_rational(std::move(params), restricted,
                              t_int_B(pt.m, pt.a, pt.n, pt.p, q, &cache), pt.p);
    }));
  }
  return jobs;
}

// --- Kummer congruences -----------------------------------------------------

std::vector<Job> kummer_jobs(const Sweep& sweep, EulerCache& cache) {
  std::vector<Job> jobs;
  const std::vector<long> digit_list = or_default(sweep.digits, {6});
  for (long p : or_default(sweep.primes, {3, 5})) {
    for (const Rational& q : qs_for(sweep, {Rational(1 + p)})) {
      for (long n : or_default(sweep.big_ns, {p})) {
        for (long a : or_default(sweep.as, {1, 2})) {
          for (long m1 : or_default(sweep.ms, {1, 2})) {
            for (long c : or_default(sweep.cs, range(0, 3))) {
              for (long digits : digit_list) {
                const long m2 = m1 + (p - 1) * ipow(p, c).get_si();
                Params params = base_params(p, q);
                params.emplace_back("N", n);
                params.emplace_back("a", a);
                params.emplace_back("m1", m1);
                params.emplace_back("m2", m2);
                params.emplace_back("c", c);
                params.emplace_back("K", digits);
                jobs.push_back(job(params, [p, q, n, a, m1, m2, c, digits, &cache](Params prm) {
                  require(c + 1 <= digits, "K must exceed c to observe the congruence");
                  const PAdicContext ctx(p, digits);
                  const QParam qp = QParam::padic(q, ctx);
                  const PAdicApprox lhs = t_series(PAdicInt(m1, p, digits), a, n, qp, ctx, &cache);
                  const PAdicApprox rhs = t_series(PAdicInt(m2, p, digits), a, n, qp, ctx, &cache);
                  ClaimInstance inst = compare_padic(std::move(prm), lhs, rhs);
                  inst.verdict =
                      *inst.vp_diff >= Valuation(c + 1) ? Verdict::kPass : Verdict::kFail;
                  return inst;
                }));
              }
            }
          }
        }
      }
    }
  }
  return jobs;
}

std::vector<std::string> normalizations(ClaimId id) {
  switch (id) {
    case ClaimId::kEq1:
      return {"measure d mu_{q^{-k}} read as d mu_{q^k}",
              "indices M with p | hM kept: the identity holds term by term"};
    case ClaimId::kEq2:
      return {"(y)_k read as the residue of y modulo k in [0, k)",
              "T argument taken as (hM)_k",
              "indices with p | (hM)_k evaluated through the rational kernel"};
    case ClaimId::kEq3:
      return {"display letters m, k renamed to modulus d and degree n",
              "alternating relation requires an odd modulus d"};
    case ClaimId::kEq4:
      return {"fractional arguments (a + iN)/(pN) evaluated against base q^{pN}"};
    case ClaimId::kRestrictedSum:
      return {"modulus p^N of the inner T read as pN", "0 < a < N so that (a + iN)_{pN} = a + iN"};
    case ClaimId::kSubtractionVsInParticular:
      return {"exponent n of the subtracted integral read as m",
              "measure d mu_{q^{p^N}} read as d mu_{q^{pN}}",
              "restricted distribution sum evaluated at integer s = m"};
    case ClaimId::kEq5A:
    case ClaimId::kEq5B:
      return {"T argument hM read as (hM)_k",
              "indices with p | (hM)_k evaluated through the rational kernel",
              id == ClaimId::kEq5A ? "T read as the finite sum without Euler factor"
                                   : "T read with the Euler factor at p removed"};
    case ClaimId::kKummer:
      return {"m2 = m1 + (p-1) p^c; passes when vp(T(m1) - T(m2)) >= c + 1"};
    case ClaimId::kOracle:
      return {"passes when vp(closed form - Riemann sum) is nondecreasing in N and reaches maxN - 2"};
    case ClaimId::kMeasureAdditivity:
      return {};
  }
  return {};
}

Verdict expected_for(ExpectationRule rule, const ClaimInstance& inst) {
  switch (rule) {
    case ExpectationRule::kHolds:
      return Verdict::kPass;
    case ExpectationRule::kFails:
      return Verdict::kFail;
    case ExpectationRule::kHoldsIffCondition:
      return inst.condition.value_or(true) ? Verdict::kPass : Verdict::kFail;
    case ExpectationRule::kFailsIffCondition:
      return inst.condition.value_or(true) ? Verdict::kFail : Verdict::kPass;
  }
  return Verdict::kPass;
}

std::vector<ClaimInstance> run_jobs(const std::vector<Job>& jobs, unsigned threads) {
  std::vector<ClaimInstance> out(jobs.size());
  const unsigned workers =
      std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) out[i] = jobs[i]();
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) out[i] = jobs[i]();
    });
  }
  pool.clear();
  return out;
}

}  // namespace

const std::vector<ClaimId>& all_claims() {
  static const std::vector<ClaimId> ids = [] {
    std::vector<ClaimId> out;
    for (const ClaimInfo& info : kClaims) out.push_back(info.id);
    return out;
  }();
  return ids;
}

std::string_view claim_name(ClaimId id) {
  for (const ClaimInfo& info : kClaims) {
    if (info.id == id) return info.name;
  }
  return "unknown";
}

std::optional<ClaimId> parse_claim(std::string_view name) {
  for (const ClaimInfo& info : kClaims) {
    if (info.name == name) return info.id;
  }
  return std::nullopt;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kSkipped:
      return "skipped";
  }
  return "unknown";
}

std::string_view rule_name(ExpectationRule r) {
  switch (r) {
    case ExpectationRule::kHolds:
      return "holds";
    case ExpectationRule::kFails:
      return "fails";
    case ExpectationRule::kHoldsIffCondition:
      return "holds-iff-condition";
    case ExpectationRule::kFailsIffCondition:
      return "fails-iff-condition";
  }
  return "unknown";
}

std::optional<ExpectationRule> parse_rule(std::string_view name) {
  for (ExpectationRule r : {ExpectationRule::kHolds, ExpectationRule::kFails,
                            ExpectationRule::kHoldsIffCondition, ExpectationRule::kFailsIffCondition}) {
    if (rule_name(r) == name) return r;
  }
  return std::nullopt;
}

ExpectedVerdicts::ExpectedVerdicts(int version, std::map<ClaimId, ExpectationRule> rules)
    : version_(version), rules_(std::move(rules)) {}

ExpectationRule ExpectedVerdicts::rule(ClaimId id) const {
  const auto it = rules_.find(id);
  if (it == rules_.end()) {
    throw PreconditionError("expected-verdict table has no entry for " + std::string(claim_name(id)));
  }
  return it->second;
}

std::string ExpectedVerdicts::default_path() {
  return std::string(QDC_DATA_DIR) + "/expected_verdicts.json";
}

ClaimReport verify_claim(ClaimId id, const Sweep& sweep, const ExpectedVerdicts& expected,
                         const VerifyOptions& options) {
  EulerCache cache;
  std::vector<Job> jobs;
  switch (id) {
    case ClaimId::kMeasureAdditivity:
      jobs = measure_jobs(sweep);
      break;
    case ClaimId::kEq1:
      jobs = eq1_jobs(sweep, cache);
      break;
    case ClaimId::kEq2:
      jobs = eq2_jobs(sweep, cache);
      break;
    case ClaimId::kEq3:
      jobs = eq3_jobs(sweep, cache);
      break;
    case ClaimId::kEq4:
      jobs = eq4_jobs(sweep, cache);
      break;
    case ClaimId::kRestrictedSum:
      jobs = restricted_sum_jobs(sweep, cache);
      break;
    case ClaimId::kSubtractionVsInParticular:
      jobs = subtraction_jobs(sweep, cache);
      break;
    case ClaimId::kEq5A:
      jobs = eq5_jobs(sweep, cache, TReading::kA);
      break;
    case ClaimId::kEq5B:
      jobs = eq5_jobs(sweep, cache, TReading::kB);
      break;
    case ClaimId::kKummer:
      jobs = kummer_jobs(sweep, cache);
      break;
    case ClaimId::kOracle:
      jobs = oracle_jobs(sweep, cache);
      break;
  }

  ClaimReport report{id, expected.rule(id), normalizations(id), run_jobs(jobs, options.jobs), {}};
  ClaimSummary& s = report.summary;
  for (ClaimInstance& inst : report.instances) {
    if (inst.verdict == Verdict::kSkipped) {
      inst.expected = Verdict::kSkipped;
      ++s.skipped;
      continue;
    }
    inst.expected = expected_for(report.rule, inst);
    (inst.verdict == Verdict::kPass ? s.pass : s.fail) += 1;
    if (inst.verdict != inst.expected) ++s.unexpected;
  }
  if (s.unexpected > 0) {
    s.verdict = "unexpected";
  } else if (s.pass + s.fail == 0) {
    s.verdict = "vacuous";
  } else {
    s.verdict = s.fail > 0 ? "fails-as-expected" : "holds";
  }
  return report;
}

std::vector<ClaimReport> verify_ledger(const ExpectedVerdicts& expected, const VerifyOptions& options) {
  std::vector<ClaimReport> out;
  for (ClaimId id : all_claims()) out.push_back(verify_claim(id, Sweep{}, expected, options));
  return out;
}

}  // namespace qdc
