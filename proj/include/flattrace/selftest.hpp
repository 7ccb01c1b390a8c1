#pragma once

#include <iosfwd>

#include "flattrace/catalog.hpp"

namespace flattrace {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SelfTestReport {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Full verification battery (criteria A1..A8). Writes one line per criterion
/// to `progress` when given. Deterministic.
SelfTestReport run_acceptance_suite(std::ostream* progress = nullptr);

}  // namespace flattrace
