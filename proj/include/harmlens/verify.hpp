#pragma once

#include <string>
#include <vector>

#include "harmlens/rational.hpp"

namespace harmlens {

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct VerifyOptions {
    bool skip_census = false;
    double tol = 1e-8;
    int resolution = 512;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_ok() const;
};

/// Degree-2 function attaining the 5n - 5 = 5 zero bound:
/// r(z) = (z^2 + z - 1/2) / (z^2 - 3z/2 + 1).
Rational extremal_quadratic_example();

/// Full-pipeline regression against the known solution of the extremal
/// quadratic: zero and pole locations, orientation split, windings, the
/// index bookkeeping identity, the critical-orbit attribution, and the
/// orientation-region pattern of the critical set.
VerifyReport verify_reference_example(const VerifyOptions& opts = {});

}  // namespace harmlens
