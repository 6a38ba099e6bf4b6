#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdc/claims.hpp"
#include "qdc/dedekind.hpp"
#include "qdc/errors.hpp"
#include "qdc/fermionic.hpp"
#include "qdc/interpolation.hpp"
#include "qdc/q_numbers.hpp"
#include "qdc/report.hpp"

namespace {

using namespace qdc;
using json = nlohmann::ordered_json;

constexpr int kExitUnexpected = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitNumeric = 3;

struct ComputeArgs {
  std::string kind;
  std::optional<long> n, m, h, k, a, big_n, p, l, s;
  long digits = 8;
  std::string q = "";
  std::string x = "";
  std::string variant = "A";
  std::string policy = "skip";
};

struct VerifyArgs {
  std::string claim = "all";
  std::string p, q, m, h, k, big_n, a, d, n, x, c, digits;
  long max_level = 0;
  std::string out;
  std::string format = "json";
  unsigned jobs = 1;
  std::string expected;
};

struct OracleArgs {
  std::string family = "modified";
  long m = 1;
  long x = 0;
  long p = 3;
  std::string q = "4";
  long max_level = 6;
  unsigned jobs = 1;
};

long need(const std::optional<long>& v, const char* flag, const std::string& kind) {
  require(v.has_value(), kind + " needs " + flag);
  return *v;
}

Rational need_q(const std::string& q, const std::string& kind) {
  require(!q.empty(), kind + " needs -q");
  return Rational::parse(q);
}

QParam q_for_prime(const Rational& q, long p) {
  require(p >= 3 && is_prime(p), "p must be an odd prime");
  if (vp(Rational(1) - q, p) >= Valuation(1)) return QParam::padic(q, PAdicContext(p, 8));
  return QParam::algebraic(q);
}

// Parses "1,3,5", "0..6" and mixtures such as "0..2,5".
std::vector<long> parse_list(const std::string& text, const char* flag) {
  std::vector<long> out;
  if (text.empty()) return out;
  std::stringstream in(text);
  std::string item;
  try {
    while (std::getline(in, item, ',')) {
      const auto dots = item.find("..");
      if (dots == std::string::npos) {
        out.push_back(std::stol(item));
        continue;
      }
      const long lo = std::stol(item.substr(0, dots));
      const long hi = std::stol(item.substr(dots + 2));
      require(lo <= hi && hi - lo <= 10'000, std::string("bad range in ") + flag);
      for (long v = lo; v <= hi; ++v) out.push_back(v);
    }
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const PreconditionError*>(&e) != nullptr) throw;
    throw PreconditionError(std::string("cannot parse ") + flag + " value '" + text + "'");
  }
  return out;
}

std::vector<Rational> parse_q_list(const std::string& text) {
  std::vector<Rational> out;
  if (text.empty()) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(Rational::parse(item));
  return out;
}

json padic_json(const PAdicApprox& x) {
  json out;
  out["p"] = x.prime();
  if (x.is_zero()) {
    out["valuation"] = "inf";
    out["unit"] = "0";
  } else {
    out["valuation"] = x.valuation().value();
    out["unit"] = x.unit().get_str();
  }
  out["absolute_precision"] = x.absolute_precision();
  return out;
}

void print_rational(const std::string& kind, const Rational& v, json extra = json::object()) {
  std::cout << v.to_string() << '\n';
  json line;
  line["kind"] = kind;
  line["value"] = v.to_string();
  for (auto& [key, value] : extra.items()) line[key] = value;
  std::cout << line.dump() << '\n';
}

void print_padic(const std::string& kind, const PAdicApprox& v, json extra = json::object()) {
  std::cout << v.to_string() << '\n';
  json line;
  line["kind"] = kind;
  line["value"] = padic_json(v);
  for (auto& [key, value] : extra.items()) line[key] = value;
  std::cout << line.dump() << '\n';
}

json skipped_json(const std::vector<long>& skipped) { return {{"skipped_M", skipped}}; }

void run_compute(const ComputeArgs& args) {
  const std::string& kind = args.kind;
  EulerCache cache;
  if (kind == "euler-modified") {
    const long n = need(args.n, "-n", kind);
    print_rational(kind, euler_modified(n, QParam::algebraic(need_q(args.q, kind)), args.big_n.value_or(1)));
  } else if (kind == "euler-carlitz") {
    const long m = args.m ? *args.m : need(args.n, "-m", kind);
    print_rational(kind, euler_carlitz(m, QParam::algebraic(need_q(args.q, kind))));
  } else if (kind == "q-euler-poly") {
    const long m = need(args.m, "-m", kind);
    const QParam q = QParam::algebraic(need_q(args.q, kind));
    QBracketArg arg{0, 1};
    if (!args.x.empty()) {
      const Rational x = Rational::parse(args.x);
      require(x.is_integer(), "q-euler-poly takes an integer -x; use -a and -N for a/N");
      arg = QBracketArg::integer(x.numerator().get_si());
    } else {
      arg = QBracketArg::fraction(need(args.a, "-a", kind), need(args.big_n, "-N", kind));
    }
    print_rational(kind, q_euler_poly(m, arg, q, &cache));
  } else if (kind == "classical-euler-poly") {
    const long n = args.n ? *args.n : need(args.m, "-n", kind);
    require(!args.x.empty(), kind + " needs -x");
    print_rational(kind, classical_euler_poly(n, Rational::parse(args.x)));
  } else if (kind == "dc-classical") {
    print_rational(kind, dc_sum_classical(need(args.m, "-m", kind), need(args.h, "-h", kind),
                                          need(args.k, "-k", kind)));
  } else if (kind == "dc-q") {
    const long k = need(args.k, "-k", kind);
    print_rational(kind, dc_sum_q(need(args.m, "-m", kind), need(args.h, "-h", kind), k,
                                  args.l.value_or(k), QParam::algebraic(need_q(args.q, kind)),
                                  &cache));
  } else if (kind == "t-int-a" || kind == "t-int-b") {
    const long p = need(args.p, "-p", kind);
    const QParam q = q_for_prime(need_q(args.q, kind), p);
    const long m = need(args.m, "-m", kind);
    const long a = need(args.a, "-a", kind);
    const long n = need(args.big_n, "-N", kind);
    print_rational(kind, kind == "t-int-a" ? t_int_A(m, a, n, p, q, &cache)
                                           : t_int_B(m, a, n, p, q, &cache));
  } else if (kind == "t-series") {
    const long p = need(args.p, "-p", kind);
    const PAdicContext ctx(p, args.digits);
    const QParam q = QParam::padic(need_q(args.q, kind), ctx);
    const long s = args.s ? *args.s : need(args.m, "-s", kind);
    print_padic(kind, t_series(PAdicInt(s, p, args.digits), need(args.a, "-a", kind),
                               need(args.big_n, "-N", kind), q, ctx, &cache));
  } else if (kind == "s-pq") {
    const long p = need(args.p, "-p", kind);
    const long h = need(args.h, "-h", kind);
    const long k = need(args.k, "-k", kind);
    if (args.variant == "series") {
      const PAdicContext ctx(p, args.digits);
      const QParam q = QParam::padic(need_q(args.q, kind), ctx);
      const long s = args.s ? *args.s : need(args.m, "-s", kind);
      const SpqPAdic v = s_pq_series(PAdicInt(s, p, args.digits), h, k, q, ctx, &cache);
      print_padic(kind, v.value, skipped_json(v.skipped));
      return;
    }
    require(args.variant == "A" || args.variant == "B", "--variant must be A, B or series");
    require(args.policy == "skip" || args.policy == "include", "--policy must be skip or include");
    const QParam q = q_for_prime(need_q(args.q, kind), p);
    const SpqRational v =
        s_pq(need(args.m, "-m", kind), h, k, p, q, args.variant == "A" ? TReading::kA : TReading::kB,
             args.policy == "skip" ? SkipPolicy::kSkipNonUnits : SkipPolicy::kIncludeAll, &cache);
    json extra = skipped_json(v.skipped);
    extra["non_unit_terms"] = v.non_unit_terms;
    print_rational(kind, v.value, std::move(extra));
  } else {
    throw PreconditionError("unknown compute kind '" + kind + "'");
  }
}

std::string output_path(const std::string& out) {
  const char* dir = std::getenv("QDC_OUTPUT_DIR");
  if (dir == nullptr || std::filesystem::path(out).is_absolute()) return out;
  return (std::filesystem::path(dir) / out).string();
}

int run_verify(const VerifyArgs& args) {
  require(args.format == "json" || args.format == "csv", "--format must be json or csv");
  require(args.jobs >= 1, "--jobs must be at least 1");
  Sweep sweep;
  sweep.primes = parse_list(args.p, "--p");
  sweep.qs = parse_q_list(args.q);
  sweep.ms = parse_list(args.m, "--m");
  sweep.hs = parse_list(args.h, "--h");
  sweep.ks = parse_list(args.k, "--k");
  sweep.big_ns = parse_list(args.big_n, "--N");
  sweep.as = parse_list(args.a, "--a");
  sweep.ds = parse_list(args.d, "--d");
  sweep.ns = parse_list(args.n, "--n");
  sweep.xs = parse_list(args.x, "--x");
  sweep.cs = parse_list(args.c, "--c");
  sweep.digits = parse_list(args.digits, "--K");
  sweep.max_level = args.max_level;
  for (long p : sweep.primes) require(p >= 3 && is_prime(p), "--p values must be odd primes");
  for (long k : sweep.ks) require(k >= 1, "--k values must be positive");
  for (long n : sweep.big_ns) require(n >= 1, "--N values must be positive");
  for (long d : sweep.digits) require(d >= 1, "--K values must be positive");

  const ExpectedVerdicts expected =
      ExpectedVerdicts::load(args.expected.empty() ? ExpectedVerdicts::default_path() : args.expected);
  const VerifyOptions options{args.jobs};

  std::vector<ClaimReport> reports;
  const bool ledger = args.claim == "all";
  if (ledger) {
    for (ClaimId id : all_claims()) reports.push_back(verify_claim(id, sweep, expected, options));
  } else {
    const auto id = parse_claim(args.claim);
    require(id.has_value(), "unknown claim '" + args.claim + "'");
    reports.push_back(verify_claim(*id, sweep, expected, options));
  }

  std::string text;
  if (args.format == "csv") {
    text = report_csv(reports);
  } else {
    text = ledger ? ledger_json(reports, expected) : report_json(reports.front());
  }
  if (args.out.empty()) {
    std::cout << text;
  } else {
    const std::string path = output_path(args.out);
    std::ofstream file(path, std::ios::binary);
    require(static_cast<bool>(file), "cannot write " + path);
    file << text;
  }
  for (const ClaimReport& r : reports) {
    std::cerr << claim_name(r.claim) << ": " << r.summary.verdict << " (pass " << r.summary.pass
              << ", fail " << r.summary.fail << ", skipped " << r.summary.skipped << ", unexpected "
              << r.summary.unexpected << ")\n";
  }
  return verify_exit_code(reports) == 0 ? 0 : kExitUnexpected;
}

void run_oracle(const OracleArgs& args) {
  const QParam q = QParam::padic(Rational::parse(args.q), PAdicContext(args.p, 1));
  const MeasureLevel lvl(PAdicContext(args.p, 1), 1, q);
  Integrand f;
  std::optional<Rational> target;
  if (args.family == "one") {
    f = {"1", [](long) { return Rational(1); }};
    target = Rational(1);
  } else if (args.family == "modified") {
    f = twisted_bracket_power(args.m, q);
    target = euler_modified(args.m, q);
  } else if (args.family == "carlitz") {
    f = bracket_power(args.m, q);
    target = euler_carlitz(args.m, q);
  } else if (args.family == "shifted") {
    f = shifted_twisted_bracket_power(args.m, args.x, q);
    target = q_euler_poly(args.m, QBracketArg::integer(args.x), q);
  } else {
    throw PreconditionError("--family must be one, modified, carlitz or shifted");
  }
  std::cout << trace_csv(convergence_trace(f, args.max_level, lvl, target, args.jobs));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact q-Euler numbers, fermionic p-adic integrals and DC sums"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Evaluate a single quantity exactly");
  c->set_help_flag("--help", "Print this help message and exit");
  c->add_option("kind", compute.kind,
                "euler-modified, euler-carlitz, q-euler-poly, classical-euler-poly, dc-classical, "
                "dc-q, t-int-a, t-int-b, t-series or s-pq")
      ->required();
  c->add_option("-n,--n", compute.n, "Index n");
  c->add_option("-m,--m", compute.m, "Degree m");
  c->add_option("-h,--h", compute.h, "Numerator h");
  c->add_option("-k,--k", compute.k, "Modulus k");
  c->add_option("-a,--a", compute.a, "Argument a");
  c->add_option("-N,--N", compute.big_n, "Modulus N (base exponent for euler-modified)");
  c->add_option("-p,--p", compute.p, "Odd prime p");
  c->add_option("-l,--l", compute.l, "Base exponent l of dc-q (defaults to k)");
  c->add_option("-s,--s", compute.s, "Integer point s of the p-adic series");
  c->add_option("-K,--K", compute.digits, "p-adic digits")->capture_default_str();
  c->add_option("-q,--q", compute.q, "q as a rational num/den");
  c->add_option("-x,--x", compute.x, "Argument x (rational for classical-euler-poly)");
  c->add_option("--variant", compute.variant, "s-pq reading: A, B or series")->capture_default_str();
  c->add_option("--policy", compute.policy, "s-pq treatment of p | (hM)_k: skip or include")
      ->capture_default_str();

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run claim sweeps and write a report");
  v->set_help_flag("--help", "Print this help message and exit");
  v->add_option("--claim", verify.claim, "Claim id or 'all'")->capture_default_str();
  v->add_option("--p", verify.p, "Primes, e.g. 3,5");
  v->add_option("--q", verify.q, "q values, e.g. 2/1,4/1");
  v->add_option("--m", verify.m, "Degrees");
  v->add_option("--h", verify.h, "Numerators h");
  v->add_option("--k", verify.k, "Moduli k");
  v->add_option("--N", verify.big_n, "Moduli N");
  v->add_option("--a", verify.a, "Arguments a");
  v->add_option("--d", verify.d, "Distribution moduli d");
  v->add_option("--n", verify.n, "Degrees n of the distribution relation");
  v->add_option("--x", verify.x, "Shifts x");
  v->add_option("--c", verify.c, "Kummer exponents c");
  v->add_option("--K", verify.digits, "p-adic digits");
  v->add_option("--maxN", verify.max_level, "Deepest measure level");
  v->add_option("--out", verify.out, "Output file (stdout when omitted)");
  v->add_option("--format", verify.format, "json or csv")->capture_default_str();
  v->add_option("--jobs", verify.jobs, "Worker threads")->capture_default_str();
  v->add_option("--expected", verify.expected, "Expected-verdict table");

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Print a Riemann-sum convergence trace as CSV");
  o->set_help_flag("--help", "Print this help message and exit");
  o->add_option("--family", oracle.family, "one, modified, carlitz or shifted")->capture_default_str();
  o->add_option("-m,--m", oracle.m, "Degree m")->capture_default_str();
  o->add_option("-x,--x", oracle.x, "Shift x of the shifted family")->capture_default_str();
  o->add_option("-p,--p", oracle.p, "Odd prime p")->capture_default_str();
  o->add_option("-q,--q", oracle.q, "q as num/den, q = 1 mod p")->capture_default_str();
  o->add_option("--maxN", oracle.max_level, "Deepest level")->capture_default_str();
  o->add_option("--jobs", oracle.jobs, "Worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitPrecondition;
  }

  try {
    if (*c) run_compute(compute);
    if (*o) run_oracle(oracle);
    if (*v) return run_verify(verify);
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const PoleError& e) {
    std::cerr << "pole: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const PrecisionError& e) {
    std::cerr << "precision: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ResourceError& e) {
    std::cerr << "resource: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
