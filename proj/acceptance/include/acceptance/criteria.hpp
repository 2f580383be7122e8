#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mwin::acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int kCriteria = 10;

/// Runs criterion `id` (1 … 10). Exceptions are reported as failures.
CriterionResult run_criterion(int id);

/// One line per criterion: "[PASS] 3 title (1.2 s): detail".
void print_result(std::ostream& out, const CriterionResult& r);

/// Runs the selected criteria (all when empty), printing each line as it
/// finishes. Returns the number of failures.
int run_suite(std::ostream& out, const std::vector<int>& ids = {});

}  // namespace mwin::acceptance
