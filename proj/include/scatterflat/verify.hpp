#pragma once

/// The acceptance checks behind `scatterflat verify` and the standalone
/// acceptance binary: ten numbered criteria with pinned tolerances, grouped
/// into suites (identities, guillemin, poisson, chambers, all).

#include <string>
#include <vector>

namespace scatterflat::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;  ///< measured values and the pinned thresholds
    double seconds = 0;
};

/// Criterion ids per suite: identities {3,4,5}, guillemin {1,2,6,9},
/// poisson {7,8}, chambers {10}, all {1..10}.
std::vector<int> suite_criteria(const std::string& suite);

CriterionResult run_criterion(int id, unsigned seed);

/// Run a suite in ascending criterion order and return the results.
std::vector<CriterionResult> run_suite(const std::string& suite, unsigned seed);

/// "PASS criterion 4: ..." / "FAIL criterion 4: ..." line for one result.
std::string format_result_line(const CriterionResult& r);

} // namespace scatterflat::verify
