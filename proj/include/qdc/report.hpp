#pragma once

#include <string>
#include <vector>

#include "qdc/claims.hpp"
#include "qdc/fermionic.hpp"

namespace qdc {

// Stable-key-order serialisation of claim reports. Rationals are written as
// "num/den" strings; p-adic values as objects carrying their precision.
std::string report_json(const ClaimReport& report);
std::string ledger_json(const std::vector<ClaimReport>& reports, const ExpectedVerdicts& expected);

std::string report_csv(const std::vector<ClaimReport>& reports);

// Columns N,value,vp_step and vp_target when the trace has a target.
std::string trace_csv(const ConvergenceTrace& trace);

// Exit status for a verify run: 0 when no non-skipped instance deviates from
// its expected verdict, 1 otherwise.
int verify_exit_code(const std::vector<ClaimReport>& reports);

}  // namespace qdc
