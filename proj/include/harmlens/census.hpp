#pragma once

#include <cstdint>
#include <cstdio>
#include <utility>
#include <vector>

#include "harmlens/rational.hpp"
#include "harmlens/solver.hpp"

namespace harmlens {

struct CensusOptions {
    std::vector<int> degrees = {2, 3, 4, 5};
    int trials = 500;
    std::uint64_t seed = 0;
    // 0 picks the hardware thread count.
    int workers = 0;
    SolveOptions solve = [] {
        SolveOptions s;
        s.perturb = true;
        s.compute_winding = false;
        return s;
    }();
};

// Everything needed to replay a single offending trial exactly.
struct ViolationReproducer {
    std::uint64_t seed = 0;
    int degree = 0;
    int trial = 0;
    Rational function = Rational::unreduced({}, Polynomial::constant(1.0));
    int zero_count = 0;
    int n_plus = 0;
};

struct DegreeCensus {
    int degree = 0;
    int trials = 0;
    int max_zeros = 0;
    int max_n_plus = 0;
    // (zero count, number of trials observing it), ascending in count.
    std::vector<std::pair<int, int>> zero_histogram;
    int perturbed_trials = 0;
    int singular_trials = 0;
    std::vector<ViolationReproducer> violations;

    int zero_bound() const { return 5 * degree - 5; }
    int preserving_bound() const { return 2 * degree - 2; }
    bool within_bounds() const {
        return max_zeros <= zero_bound() && max_n_plus <= preserving_bound();
    }
};

struct CensusResult {
    std::uint64_t seed = 0;
    std::vector<DegreeCensus> per_degree;
    bool all_within_bounds() const;
};

// The trial function for (degree, trial) under a census seed: independent
// standard complex-normal coefficients, leading coefficients resampled while
// below 1e-3 in magnitude, and the whole pair resampled until coprime.
Rational random_rational(int degree, std::uint64_t seed);

// Runs `trials` random-function solves per requested degree, in parallel
// across a worker pool, and tallies zero counts against the 5n - 5 and
// 2n - 2 bounds.  Results are deterministic for a fixed seed regardless of
// worker count.  A per-trial progress line goes to `log` when non-null.
CensusResult run_bound_census(const CensusOptions& opts = {}, std::FILE* log = nullptr);

}  // namespace harmlens
