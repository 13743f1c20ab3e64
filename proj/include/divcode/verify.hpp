#pragma once

#include <string>
#include <vector>

#include "divcode/fixtures.hpp"

namespace divcode {

struct CheckResult {
    std::string id;
    std::string tier;  // "fast", "search", "long"
    bool pass = false;
    std::string detail;
};

// The verification suite behind both the acceptance tests and the CLI's
// verify-paper command. Each tier prints nothing; callers render results.
//
// fast: golden enumerators, automorphism orders, projectivity, power-moment
//       and closed-form identities, MacWilliams involution and oracle
//       equivalence, the length-9 non-existence search, weight-set and
//       residual uniqueness sweeps, and the hyperplane cross-check.
// search: the three no-extension runs, the unique extension run, and the
//       seeded lengthening run.
// long: the full residual classification counts (11/83/215) and the complete
//       ten-code reproduction.
std::vector<CheckResult> run_fast_checks(const FixtureSet& fx, int jobs = 1);
std::vector<CheckResult> run_search_checks(const FixtureSet& fx, int jobs = 1);
std::vector<CheckResult> run_long_checks(const FixtureSet& fx, int jobs = 1,
                                         const std::string& checkpoint_dir = "");

}  // namespace divcode
