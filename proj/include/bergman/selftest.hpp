#ifndef BERGMAN_SELFTEST_HPP
#define BERGMAN_SELFTEST_HPP

#include <ostream>
#include <string>
#include <vector>

#include "bergman/config.hpp"

namespace bergman::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// The embedded certification suite: every acceptance criterion at its
/// pinned tolerance, with the fixed default seed, one result per item.
std::vector<CriterionResult> run_all(const Config& config);

/// Prints one PASS/FAIL line per criterion; returns true iff all passed.
bool run_and_report(std::ostream& out, const Config& config);

}  // namespace bergman::selftest

#endif
