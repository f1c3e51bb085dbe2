#include "harmlens/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "harmlens/critical_curves.hpp"
#include "harmlens/errors.hpp"
#include "harmlens/solver.hpp"

namespace harmlens {

bool VerifyReport::all_ok() const {
    return std::ranges::all_of(checks, [](const CheckResult& c) { return c.ok; });
}

Rational extremal_quadratic_example() {
    return Rational({Cx(-0.5), Cx(1.0), Cx(1.0)}, {Cx(1.0), Cx(-1.5), Cx(1.0)});
}

namespace {

struct Reference {
    Cx location;
    Orientation orientation;
};

std::string fmt(Cx z) {
    std::ostringstream out;
    out << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return out.str();
}

// Greedy bijective matching is enough here: the reference points are far
// apart compared to the tolerance.
bool match_all(const std::vector<Cx>& found, const std::vector<Cx>& expected, double tol,
               std::string& detail) {
    if (found.size() != expected.size()) {
        detail = "count " + std::to_string(found.size()) + ", expected " +
                 std::to_string(expected.size());
        return false;
    }
    std::vector<bool> used(found.size(), false);
    for (Cx e : expected) {
        bool hit = false;
        for (std::size_t i = 0; i < found.size(); ++i) {
            if (!used[i] && std::abs(found[i] - e) <= tol) {
                used[i] = true;
                hit = true;
                break;
            }
        }
        if (!hit) {
            detail = "no match for " + fmt(e);
            return false;
        }
    }
    return true;
}

}  // namespace

VerifyReport verify_reference_example(const VerifyOptions& opts) {
    const Rational r = extremal_quadratic_example();
    const double s2 = std::sqrt(2.0);
    const double s7 = std::sqrt(7.0);
    const double s11 = std::sqrt(11.0);

    const std::vector<Reference> reference_zeros = {
        {Cx(1.0 - s2), Orientation::SensePreserving},
        {Cx(1.0 + s2), Orientation::SensePreserving},
        {Cx(0.5), Orientation::SenseReversing},
        {Cx(0.5, 0.5 * s11), Orientation::SenseReversing},
        {Cx(0.5, -0.5 * s11), Orientation::SenseReversing},
    };
    const std::vector<Cx> reference_poles = {Cx(0.75, 0.25 * s7), Cx(0.75, -0.25 * s7)};

    VerifyReport report;
    auto add = [&](std::string name, bool ok, std::string detail) {
        report.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    SolveOptions solve_opts;
    solve_opts.tol_accept = std::min(1e-8, opts.tol);
    const SolveReport solved = solve_zeros(r, solve_opts);

    {
        std::vector<Cx> found;
        for (const HarmonicZero& z : solved.zeros) found.push_back(z.location);
        std::vector<Cx> expected;
        for (const Reference& ref : reference_zeros) expected.push_back(ref.location);
        std::string detail = std::to_string(found.size()) + " zeros within tolerance";
        const bool ok = match_all(found, expected, opts.tol, detail);
        add("zero_locations", ok, detail);
    }

    {
        bool ok = solved.n_plus == 2 && solved.n_minus == 3 && solved.n_singular == 0;
        for (const Reference& ref : reference_zeros) {
            const auto it = std::ranges::find_if(solved.zeros, [&](const HarmonicZero& z) {
                return std::abs(z.location - ref.location) <= opts.tol;
            });
            if (it == solved.zeros.end() || it->orientation != ref.orientation) ok = false;
        }
        std::ostringstream detail;
        detail << "n_plus=" << solved.n_plus << " n_minus=" << solved.n_minus
               << " n_singular=" << solved.n_singular << ", expected 2/3/0";
        add("orientation_split", ok, detail.str());
    }

    {
        std::vector<Cx> found;
        for (const PoleOrder& p : solved.pole_orders) found.push_back(p.location);
        std::string detail = "both poles within tolerance";
        bool ok = match_all(found, reference_poles, opts.tol, detail);
        for (const PoleOrder& p : solved.pole_orders) {
            if (p.order != -1) ok = false;
        }
        add("pole_locations", ok, detail);
    }

    {
        const bool have = solved.winding_large_circle.has_value();
        const int w = have ? *solved.winding_large_circle : 0;
        add("large_circle_winding", have && w == 1,
            have ? "winding " + std::to_string(w) + ", expected 1" : "winding unavailable");
    }

    {
        std::vector<Contour> contours;
        for (Cx p : reference_poles) contours.push_back({p, 0.25});
        bool ok = true;
        std::ostringstream detail;
        try {
            const auto checks = verify_argument_principle(r, solved, contours);
            for (const ContourCheck& c : checks) {
                if (!c.ok || c.winding != 1) ok = false;
                detail << "winding " << c.winding << " (expected " << c.expected << ") ";
            }
        } catch (const Error& e) {
            ok = false;
            detail << e.what();
        }
        add("pole_windings", ok, detail.str());
    }

    {
        const int lhs = (solved.n_plus - solved.n_minus) - solved.pole_order_sum;
        const bool identity = solved.winding_large_circle.has_value() &&
                              lhs == *solved.winding_large_circle;
        const bool flagged = solved.argument_principle_ok.value_or(false);
        std::ostringstream detail;
        detail << "(n_plus - n_minus) - pole_order_sum = " << lhs << ", winding = "
               << (solved.winding_large_circle ? std::to_string(*solved.winding_large_circle)
                                               : std::string("n/a"));
        add("winding_identity", identity && flagged, detail.str());
    }

    if (!opts.skip_census) {
        bool ok = true;
        std::ostringstream detail;
        try {
            const CensusReport census = critical_orbit_census(r, solved);
            if (census.total_critical != 6) ok = false;
            if (census.unresolved != 0) ok = false;
            int attributed = 0;
            for (const OrbitAttribution& a : census.attributions) {
                attributed += a.attracted;
                if (a.attracted < 3) ok = false;
            }
            if (attributed != census.total_critical) ok = false;
            if (census.attributions.size() != 2) ok = false;
            detail << "total=" << census.total_critical << " attributed=" << attributed
                   << " unresolved=" << census.unresolved << ", expected 6/6/0 with >= 3 each";
        } catch (const Error& e) {
            ok = false;
            detail << e.what();
        }
        add("orbit_census", ok, detail.str());
    }

    {
        bool ok = true;
        std::ostringstream detail;
        try {
            const Bbox box{-2.0, 3.0, -2.0, 2.0};
            const CurveSet curves = trace_critical_set(r, box, opts.resolution);
            const RegionInfo* unbounded = nullptr;
            std::vector<const RegionInfo*> bounded;
            for (const RegionInfo& region : curves.regions) {
                if (region.unbounded) {
                    if (unbounded != nullptr) ok = false;
                    unbounded = &region;
                } else {
                    bounded.push_back(&region);
                }
            }
            detail << curves.regions.size() << " regions (" << bounded.size() << " bounded)";
            if (curves.regions.size() != 3 || unbounded == nullptr || bounded.size() != 2) {
                ok = false;
            } else {
                std::ranges::sort(bounded, [](const RegionInfo* a, const RegionInfo* b) {
                    return a->cell_count > b->cell_count;
                });
                if (unbounded->orientation != Orientation::SensePreserving) ok = false;
                if (bounded[0]->orientation != Orientation::SenseReversing) ok = false;
                if (bounded[1]->orientation != Orientation::SensePreserving) ok = false;
                detail << ", pattern " << to_string(unbounded->orientation) << " / "
                       << to_string(bounded[0]->orientation) << " / "
                       << to_string(bounded[1]->orientation);
            }
        } catch (const Error& e) {
            ok = false;
            detail << e.what();
        }
        add("orientation_regions", ok, detail.str());
    }

    return report;
}

}  // namespace harmlens
