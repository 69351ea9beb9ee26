#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// End-to-end verification suite: each criterion pins an expected result of
// the decohered quantum game at a stated tolerance and runtime budget. The
// CLI `verify` subcommand and the acceptance test binary both run it.

namespace qdilemma {

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    double seconds;
    double budget_seconds;
    std::string detail;  // expected vs observed with tolerances
};

struct AcceptanceOptions {
    // Where criterion 9 archives the formula discrepancy report.
    std::string report_path = "discrepancy_report.json";
};

std::vector<CriterionResult> run_acceptance_suite(const AcceptanceOptions& options = {});

bool all_passed(const std::vector<CriterionResult>& results);

/// One "[PASS]/[FAIL] <id>. <name>" line per criterion.
void print_criteria(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace qdilemma
