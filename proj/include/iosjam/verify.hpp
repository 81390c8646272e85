// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "iosjam/config.hpp"

namespace iosjam {

// One named comparison. `pass` encodes the rule the suite applied: two-sided
// |measured - expected| <= tolerance for moment and identity checks, one-sided
// measured >= expected - tolerance for the bound-ordering checks.
struct Check {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<Check> checks;
    bool all_pass() const;
};

// Jammed-channel entry statistics against the closed-form variances. Entries are
// pooled after per-LU normalization by the predicted variance, so the variance
// checks compare against 1 and the Gaussianity check against the complex-normal
// fourth-moment ratio 2. Sizes itself to at least 2e4 pooled entries per side;
// independent of cfg.n_blocks.
VerifyReport verify_propositions(const SimConfig& cfg);

// Mean of tr((H^H H)^-1) over 1e4 draws at 32 antennas / 8 columns with random
// per-column gains, against sum_k(1/gain_k)/(N - K), within 2%.
VerifyReport verify_wishart(const SimConfig& cfg);

// 100 zero-forcing instances at the configured dimensions: worst-case relative
// inter-user leakage and total-power mismatch, both within 1e-9.
VerifyReport verify_zf(const SimConfig& cfg);

// Monte Carlo side sum-rates under both surface schemes must stay at or above
// the closed-form lower bounds, minus the MC confidence interval, across a
// reduced per-LU power grid (first, middle and last grid entries). Runs
// cfg.n_blocks blocks per point, so the caller controls the cost.
VerifyReport verify_bounds(const SimConfig& cfg);

// All four suites, concatenated in the order above.
VerifyReport verify_all(const SimConfig& cfg);

// One line per check: "[PASS] name measured=... expected=... tol=...", then a
// "verify: N/M checks passed" summary line.
void print_report(const VerifyReport& report, std::ostream& os);

}  // namespace iosjam
