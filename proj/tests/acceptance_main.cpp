// Dedicated acceptance binary: runs every criterion at its pinned
// tolerance and prints one PASS/FAIL line each. Identical to the CLI's
// `selftest` subcommand by construction (both call selftest::run_and_report
// with the default seed).

#include <iostream>

#include "bergman/config.hpp"
#include "bergman/selftest.hpp"

int main() {
    bergman::Config config;
    bool ok = bergman::selftest::run_and_report(std::cout, config);
    return ok ? 0 : 2;
}
