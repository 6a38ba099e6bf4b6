#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qdc/padic.hpp"
#include "qdc/rational.hpp"

namespace qdc {

// Each identity of the theory, treated as an executable proposition.
enum class ClaimId {
  kMeasureAdditivity,
  kEq1,  // weighted DC sum over mu_{q^k}: both normalisations agree
  kEq2,  // [k]^{m+1} S_{m,q}(h,k:q^k) as a weighted sum of T values
  kEq3,  // distribution relation for q-Euler polynomials, modulus d
  kEq4,  // distribution relation at modulus p for [N]^m E_{m,q^N}(a/N)
  kRestrictedSum,
  kSubtractionVsInParticular,
  kEq5A,
  kEq5B,
  kKummer,
  kOracle,
};

const std::vector<ClaimId>& all_claims();
std::string_view claim_name(ClaimId id);
std::optional<ClaimId> parse_claim(std::string_view name);

enum class Verdict { kPass, kFail, kSkipped };
std::string_view verdict_name(Verdict v);

using ClaimValue = std::variant<Rational, PAdicApprox>;
using ParamValue = std::variant<long, std::string>;

struct ClaimInstance {
  std::vector<std::pair<std::string, ParamValue>> params;
  std::optional<ClaimValue> lhs;
  std::optional<ClaimValue> rhs;
  bool exact_equal = false;
  // vp(lhs - rhs) for the instance's prime; absent when no prime applies.
  std::optional<Valuation> vp_diff;
  Verdict verdict = Verdict::kSkipped;
  Verdict expected = Verdict::kSkipped;
  // lhs - rhs when both sides are rational and differ.
  std::optional<Rational> discrepancy;
  std::string skipped_reason;
  // Claim-specific fact consulted by conditional expectation rules (odd
  // modulus for eq3, nonzero correction term for eq5-A).
  std::optional<bool> condition;
};

enum class ExpectationRule { kHolds, kFails, kHoldsIffCondition, kFailsIffCondition };
std::string_view rule_name(ExpectationRule r);
std::optional<ExpectationRule> parse_rule(std::string_view name);

// The versioned table of which claims are expected to hold, shipped as
// data/expected_verdicts.json.
class ExpectedVerdicts {
 public:
  ExpectedVerdicts(int version, std::map<ClaimId, ExpectationRule> rules);

  static ExpectedVerdicts load(const std::string& path);
  static std::string default_path();

  int version() const { return version_; }
  ExpectationRule rule(ClaimId id) const;

 private:
  int version_;
  std::map<ClaimId, ExpectationRule> rules_;
};

struct ClaimSummary {
  long pass = 0;
  long fail = 0;
  long skipped = 0;
  long unexpected = 0;
  // "holds", "fails-as-expected", "unexpected" or "vacuous".
  std::string verdict;
};

struct ClaimReport {
  ClaimId claim;
  ExpectationRule rule;
  std::vector<std::string> normalizations;
  std::vector<ClaimInstance> instances;
  ClaimSummary summary;
};

// Parameter grid for a claim. Empty lists fall back to the claim's default
// sweep; `qs` may be left empty to get per-prime defaults such as 1 + p.
struct Sweep {
  std::vector<long> primes;
  std::vector<Rational> qs;
  std::vector<long> ms;
  std::vector<long> hs;
  std::vector<long> ks;
  std::vector<long> big_ns;
  std::vector<long> as;
  std::vector<long> ds;
  std::vector<long> ns;
  std::vector<long> xs;
  std::vector<long> cs;
  std::vector<long> digits;
  long max_level = 0;
};

struct VerifyOptions {
  unsigned jobs = 1;
};

ClaimReport verify_claim(ClaimId id, const Sweep& sweep, const ExpectedVerdicts& expected,
                         const VerifyOptions& options = {});

// Every claim with its default sweep, in all_claims() order.
std::vector<ClaimReport> verify_ledger(const ExpectedVerdicts& expected,
                                       const VerifyOptions& options = {});

}  // namespace qdc
