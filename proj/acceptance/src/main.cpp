// Acceptance suite: one PASS/FAIL line per criterion. Optional arguments select
// criteria by number.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "acceptance/criteria.hpp"

int main(int argc, char** argv)
{
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    const int failures = mwin::acceptance::run_suite(std::cout, ids);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
