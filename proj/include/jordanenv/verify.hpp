#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "jordanenv/options.hpp"

namespace jordanenv {

struct CheckResult {
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

struct VerifyOptions {
    EngineOptions engine{};
    bool full = false; // full agreement sweep instead of the subsampled one
};

// The end-to-end verification checklist: golden families, the envelope
// table, the oracle-versus-closed-form sweep, the numerical-range engine,
// positivity thresholds, and the invariance suite. Deterministic.
std::vector<CheckResult> run_acceptance_checks(const VerifyOptions& opts);

// Pass/fail table for the CLI; returns true when everything passed.
bool print_check_table(const std::vector<CheckResult>& results, std::ostream& os);

} // namespace jordanenv
