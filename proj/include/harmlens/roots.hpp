#pragma once

#include <vector>

#include "harmlens/polynomial.hpp"

namespace harmlens {

struct RootOptions {
    /// Aberth sweep stopping rule: all corrections below converge_rel * (1 + |root|).
    double converge_rel = 1e-13;
    int max_sweeps = 500;
    int polish_steps = 3;
    /// Roots closer than cluster_rel * (1 + |centroid|) merge into one multiple root.
    double cluster_rel = 1e-6;
    /// Also merge approximants the polynomial cannot tell apart at its own
    /// evaluation noise floor, the way a multiple root's whole basin looks.
    /// Disable when the roots feed a downstream refiner that resolves finer
    /// than point evaluation of this polynomial can.
    bool merge_unresolvable = true;
    /// Residuals above certify_rel * max(1, max |monic coeff|) mark the root uncertified.
    double certify_rel = 1e-9;
};

struct RootRecord {
    Cx location;
    int multiplicity = 1;
    /// |p(location)| / (|leading| * (1 + |location|)^degree)
    double residual = 0.0;
    bool certified = true;
};

struct RootSet {
    std::vector<RootRecord> roots;
    int degree_accounted = 0;
    /// False when the sweep budget ran out; locations are then best effort.
    bool converged = true;
    bool fully_certified = true;

    std::vector<Cx> locations() const;
    std::vector<Cx> locations_with_multiplicity() const;
};

/// All complex roots of poly by simultaneous Aberth iteration with Newton
/// polish and cluster merging. Rejects degree < 1 input. Multiplicities come
/// from cluster sizes; degree_accounted always equals deg poly.
RootSet find_roots(const Polynomial& poly, const RootOptions& opts = {});

}  // namespace harmlens
