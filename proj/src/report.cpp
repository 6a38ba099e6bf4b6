#include "qdc/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qdc/errors.hpp"

namespace qdc {

namespace {

using json = nlohmann::ordered_json;

json valuation_json(const std::optional<Valuation>& v) {
  if (!v) return nullptr;
  if (v->is_infinite()) return "inf";
  return v->value();
}

json value_json(const ClaimValue& value) {
  if (const auto* r = std::get_if<Rational>(&value)) return r->to_string();
  const auto& x = std::get<PAdicApprox>(value);
  json out;
  out["p"] = x.prime();
  out["valuation"] = valuation_json(x.valuation());
  out["unit"] = x.is_zero() ? "0" : x.unit().get_str();
  out["absolute_precision"] = x.absolute_precision();
  out["text"] = x.to_string();
  return out;
}

std::string param_text(const ParamValue& v) {
  if (const auto* n = std::get_if<long>(&v)) return std::to_string(*n);
  return std::get<std::string>(v);
}

json instance_json(const ClaimInstance& inst) {
  json out;
  json params = json::object();
  for (const auto& [key, value] : inst.params) {
    if (const auto* n = std::get_if<long>(&value)) {
      params[key] = *n;
    } else {
      params[key] = std::get<std::string>(value);
    }
  }
  out["params"] = std::move(params);
  out["lhs"] = inst.lhs ? value_json(*inst.lhs) : json(nullptr);
  out["rhs"] = inst.rhs ? value_json(*inst.rhs) : json(nullptr);
  out["exact_equal"] = inst.exact_equal;
  out["vp_diff"] = valuation_json(inst.vp_diff);
  out["verdict"] = std::string(verdict_name(inst.verdict));
  out["expected"] = std::string(verdict_name(inst.expected));
  if (inst.discrepancy) out["discrepancy"] = inst.discrepancy->to_string();
  if (!inst.skipped_reason.empty()) out["skipped_reason"] = inst.skipped_reason;
  return out;
}

json report_object(const ClaimReport& report) {
  json out;
  out["claim"] = std::string(claim_name(report.claim));
  out["expected_rule"] = std::string(rule_name(report.rule));
  out["normalizations"] = report.normalizations;
  json instances = json::array();
  for (const ClaimInstance& inst : report.instances) instances.push_back(instance_json(inst));
  out["instances"] = std::move(instances);
  out["summary"] = {{"pass", report.summary.pass},
                    {"fail", report.summary.fail},
                    {"skipped", report.summary.skipped},
                    {"unexpected", report.summary.unexpected},
                    {"verdict", report.summary.verdict}};
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string value_text(const std::optional<ClaimValue>& v) {
  if (!v) return "";
  if (const auto* r = std::get_if<Rational>(&*v)) return r->to_string();
  return std::get<PAdicApprox>(*v).to_string();
}

}  // namespace

ExpectedVerdicts ExpectedVerdicts::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open expected-verdict table " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw PreconditionError("malformed expected-verdict table " + path + ": " + e.what());
  }
  if (!doc.contains("version") || !doc.contains("claims")) {
    throw PreconditionError("expected-verdict table needs 'version' and 'claims'");
  }
  std::map<ClaimId, ExpectationRule> rules;
  for (const auto& [name, entry] : doc["claims"].items()) {
    const auto id = parse_claim(name);
    if (!id) throw PreconditionError("unknown claim in expected-verdict table: " + name);
    const auto rule = parse_rule(entry.at("rule").get<std::string>());
    if (!rule) throw PreconditionError("unknown rule for claim " + name);
    rules.emplace(*id, *rule);
  }
  return ExpectedVerdicts(doc["version"].get<int>(), std::move(rules));
}

std::string report_json(const ClaimReport& report) { return report_object(report).dump(2) + "\n"; }

std::string ledger_json(const std::vector<ClaimReport>& reports, const ExpectedVerdicts& expected) {
  json out;
  out["ledger_version"] = expected.version();
  json list = json::array();
  json summary = json::object();
  for (const ClaimReport& r : reports) {
    list.push_back(report_object(r));
    summary[std::string(claim_name(r.claim))] = r.summary.verdict;
  }
  out["reports"] = std::move(list);
  out["summary"] = std::move(summary);
  return out.dump(2) + "\n";
}

std::string report_csv(const std::vector<ClaimReport>& reports) {
  std::ostringstream out;
  out << "claim,index,params,lhs,rhs,exact_equal,vp_diff,verdict,expected,skipped_reason\n";
  for (const ClaimReport& r : reports) {
    for (std::size_t i = 0; i < r.instances.size(); ++i) {
      const ClaimInstance& inst = r.instances[i];
      std::string params;
      for (const auto& [key, value] : inst.params) {
        if (!params.empty()) params += ";";
        params += key + "=" + param_text(value);
      }
      out << claim_name(r.claim) << ',' << i << ',' << csv_field(params) << ','
          << csv_field(value_text(inst.lhs)) << ',' << csv_field(value_text(inst.rhs)) << ','
          << (inst.exact_equal ? "true" : "false") << ','
          << (inst.vp_diff ? inst.vp_diff->to_string() : "") << ',' << verdict_name(inst.verdict)
          << ',' << verdict_name(inst.expected) << ',' << csv_field(inst.skipped_reason) << '\n';
    }
  }
  return out.str();
}

std::string trace_csv(const ConvergenceTrace& trace) {
  const bool has_target = !trace.rows.empty() && trace.rows.front().vp_target.has_value();
  std::ostringstream out;
  out << "N,value,vp_diff" << (has_target ? ",vp_target" : "") << '\n';
  for (const auto& row : trace.rows) {
    out << row.level << ',' << row.value.to_string() << ','
        << (row.vp_step ? row.vp_step->to_string() : "");
    if (has_target) out << ',' << row.vp_target->to_string();
    out << '\n';
  }
  return out.str();
}

int verify_exit_code(const std::vector<ClaimReport>& reports) {
  for (const ClaimReport& r : reports) {
    if (r.summary.unexpected > 0) return 1;
  }
  return 0;
}

}  // namespace qdc
