#pragma once

#include <string>
#include <vector>

#include "harmlens/rational.hpp"
#include "harmlens/solver.hpp"

namespace harmlens {

struct Bbox {
    double x_min = -2.0;
    double x_max = 2.0;
    double y_min = -2.0;
    double y_max = 2.0;
};

// A connected region of constant orientation in the complement of the
// critical set, identified by an interior sample point.
struct RegionInfo {
    Cx sample{};
    Orientation orientation = Orientation::Singular;
    bool unbounded = false;
    int cell_count = 0;
};

struct TraceOptions {
    // Tolerance for refining curve vertices onto |r'| = 1 along grid edges.
    double refine_tol = 1e-9;
    // When set, re-trace at double resolution and fail if the region count
    // changes, i.e. the requested grid is too coarse to be trusted.
    bool stability_check = false;
};

struct CurveSet {
    Bbox bbox;
    int resolution = 0;
    // Critical set polylines in the z plane; closed loops repeat their
    // first vertex at the end.
    std::vector<std::vector<Cx>> polylines;
    // Image of each polyline under conj(r(z)) - z, vertex for vertex.
    std::vector<std::vector<Cx>> caustics;
    std::vector<RegionInfo> regions;
};

// Marching-squares trace of the critical set {|r'(z)| = 1} on a res x res
// grid over bbox, with edge vertices refined by 1D Newton on 1 - |r'|^2.
CurveSet trace_critical_set(const Rational& r, const Bbox& bbox, int resolution,
                            const TraceOptions& opts = {});

// Orientation of z - conj(r(z)) at a point; throws PoleEvaluationError when
// r' cannot be evaluated there.
Orientation orientation_at(const Rational& r, Cx z, double eps_singular = 1e-6);

// Bounding box enclosing the zeros and poles of the solved configuration
// with a 50% margin on each side.
Bbox default_bbox(const SolveReport& report);

// Standalone SVG rendering: solid critical curves, dashed caustics, zero
// markers colored by orientation, crosses at poles.
std::string curve_set_svg(const CurveSet& curves, const SolveReport* report = nullptr,
                          int width = 800);

}  // namespace harmlens
