// Acceptance gate: one line per criterion, [PASS]/[FAIL], exit code equal to
// the number of failures. Tolerances and budgets are pinned here on purpose;
// loosening them is a spec change, not a fix.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "harmlens/census.hpp"
#include "harmlens/critical_curves.hpp"
#include "harmlens/errors.hpp"
#include "harmlens/lensing.hpp"
#include "harmlens/solver.hpp"
#include "oracles.hpp"
#include "test_rng.hpp"

namespace {

using harmlens::Cx;
using harmlens::Orientation;
using harmlens::Polynomial;
using harmlens::Rational;
using Clock = std::chrono::steady_clock;

constexpr double kZeroMatchTol = 1e-8;         // criterion 1, absolute
constexpr double kPoleMatchTol = 1e-8;         // criterion 1, absolute
constexpr double kOracleMatchTol = 1e-6;       // criteria 6 and 8
constexpr double kExtendedMatchTol = 1e-8;     // criterion 7
constexpr double kSingularBand = 1e-3;         // criterion 8 resampling rule
constexpr double kBudgetExampleSolve = 1.0;    // seconds, criterion 1
constexpr double kBudgetOrbitCensus = 5.0;     // seconds, criterion 3
constexpr double kBudgetBoundCensus = 120.0;   // seconds, criterion 4

struct Outcome {
    bool ok = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const Rational& example_map() {
    static const Rational r(Polynomial{Cx(-0.5), Cx(1.0), Cx(1.0)},
                            Polynomial{Cx(1.0), Cx(-1.5), Cx(1.0)});
    return r;
}

// Bijective matching under an absolute distance cap.
bool match_absolute(std::vector<Cx> a, std::vector<Cx> b, double tol) {
    if (a.size() != b.size()) return false;
    for (const Cx& x : a) {
        double best = 1e300;
        std::size_t best_k = b.size();
        for (std::size_t k = 0; k < b.size(); ++k) {
            const double d = std::abs(x - b[k]);
            if (d < best) {
                best = d;
                best_k = k;
            }
        }
        if (best_k == b.size() || best > tol) return false;
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(best_k));
    }
    return b.empty();
}

std::vector<Cx> locations_of(const std::vector<harmlens::HarmonicZero>& zeros) {
    std::vector<Cx> out;
    out.reserve(zeros.size());
    for (const auto& z : zeros) out.push_back(z.location);
    return out;
}

Outcome criterion_example_zeros() {
    const auto t0 = Clock::now();
    const harmlens::SolveReport report = harmlens::solve_zeros(example_map());
    const double elapsed = seconds_since(t0);

    const std::vector<Cx> expected = {Cx(0.5), Cx(0.5, 1.65831239517770),
                                      Cx(0.5, -1.65831239517770), Cx(-0.41421356237310),
                                      Cx(2.41421356237310)};
    const std::vector<Cx> expected_poles = {Cx(0.75, 0.66143782776615),
                                            Cx(0.75, -0.66143782776615)};

    Outcome out;
    std::ostringstream msg;
    bool ok = report.zero_count() == 5 &&
              match_absolute(locations_of(report.zeros), expected, kZeroMatchTol);
    ok = ok && report.n_minus == 3 && report.n_plus == 2 && report.n_singular == 0;

    std::vector<Cx> pole_locs;
    for (const auto& p : report.pole_orders) pole_locs.push_back(p.location);
    ok = ok && match_absolute(pole_locs, expected_poles, kPoleMatchTol);
    ok = ok && elapsed < kBudgetExampleSolve;

    msg << report.zero_count() << " zeros, split " << report.n_plus << "+/" << report.n_minus
        << "-, " << report.pole_orders.size() << " poles, solve " << elapsed * 1e3 << " ms";
    out.ok = ok;
    out.detail = msg.str();
    return out;
}

Outcome criterion_argument_principle() {
    const harmlens::SolveReport report = harmlens::solve_zeros(example_map());

    Outcome out;
    std::ostringstream msg;
    bool ok = report.winding_large_circle.has_value() && *report.winding_large_circle == 1;
    ok = ok && report.pole_order_sum == -2;
    ok = ok && (report.n_plus - report.n_minus) - report.pole_order_sum == 1;

    std::vector<harmlens::Contour> contours;
    for (const auto& p : report.pole_orders) contours.push_back({p.location, 0.25});
    const auto checks = harmlens::verify_argument_principle(example_map(), report, contours);
    ok = ok && checks.size() == 2;
    for (const auto& c : checks) ok = ok && c.winding == 1 && c.ok;

    msg << "winding "
        << (report.winding_large_circle ? std::to_string(*report.winding_large_circle) : "none")
        << ", ledger (" << report.n_plus << " - " << report.n_minus << ") - ("
        << report.pole_order_sum << ") = 1, per-pole windings +1";
    out.ok = ok;
    out.detail = msg.str();
    return out;
}

Outcome criterion_orbit_census() {
    const auto t0 = Clock::now();
    const harmlens::SolveReport report = harmlens::solve_zeros(example_map());
    const harmlens::CensusReport census = harmlens::critical_orbit_census(example_map(), report);
    const double elapsed = seconds_since(t0);

    Outcome out;
    bool ok = census.total_critical == 6 && census.unresolved == 0 &&
              census.attributions.size() == 2;
    for (const auto& a : census.attributions) ok = ok && a.attracted == 3;
    ok = ok && census.attracted_total() == 6 && elapsed < kBudgetOrbitCensus;

    std::ostringstream msg;
    msg << census.total_critical << " critical points, attracted";
    for (const auto& a : census.attributions) msg << " " << a.attracted;
    msg << ", " << elapsed * 1e3 << " ms";
    out.ok = ok;
    out.detail = msg.str();
    return out;
}

Outcome criterion_bound_census() {
    const auto t0 = Clock::now();
    harmlens::CensusOptions opts;
    opts.degrees = {2, 3, 4, 5};
    opts.trials = 500;
    opts.seed = 20240517;
    const harmlens::CensusResult census = harmlens::run_bound_census(opts);
    const double elapsed = seconds_since(t0);

    Outcome out;
    bool ok = census.all_within_bounds() && elapsed < kBudgetBoundCensus;
    std::ostringstream msg;
    for (const auto& d : census.per_degree) {
        ok = ok && d.trials == 500 && d.max_zeros <= d.zero_bound() &&
             d.max_n_plus <= d.preserving_bound() && d.violations.empty();
        msg << "n=" << d.degree << " max " << d.max_zeros << "/" << d.zero_bound() << " plus "
            << d.max_n_plus << "/" << d.preserving_bound() << "; ";
    }
    msg << elapsed << " s";
    out.ok = ok;
    out.detail = msg.str();
    return out;
}

Outcome criterion_lens_parity() {
    testutil::Rng rng(0xFACEu);
    Outcome out;
    int checked = 0;

    for (int n = 2; n <= 5; ++n) {
        for (int trial = 0; trial < 100; ++trial) {
            harmlens::ImageSet set;
            bool solved = false;
            for (int attempt = 0; attempt < 60 && !solved; ++attempt) {
                harmlens::LensConfig config;
                for (int j = 0; j < n; ++j) {
                    const Cx pos = rng.box(1.5);
                    const bool clear = std::ranges::all_of(
                        config.masses,
                        [&](const auto& m) { return std::abs(m.position - pos) > 0.05; });
                    if (!clear) {
                        config.masses.clear();
                        break;
                    }
                    config.masses.push_back(harmlens::PointMass{rng.uniform(0.2, 1.0), pos});
                }
                if (config.n() != n) continue;
                const Cx source = rng.box(0.8);
                harmlens::SolveOptions opts;
                opts.compute_winding = false;
                try {
                    set = harmlens::find_images(config, source, opts);
                } catch (const harmlens::NumericalError&) {
                    continue;
                }
                if (set.source_on_caustic) continue;
                solved = true;
            }
            if (!solved) {
                out.detail = "could not draw a clean configuration at n = " + std::to_string(n);
                return out;
            }

            const int count = static_cast<int>(set.images.size());
            const bool parity = count % 2 == (n + 1) % 2;
            const bool ledger = count == 1 + 2 * set.report.n_minus - n;
            if (!parity || !ledger || !set.parity_ok.has_value() || !*set.parity_ok) {
                std::ostringstream msg;
                msg << "violation at n = " << n << ", trial " << trial << ": count " << count
                    << ", n_minus " << set.report.n_minus;
                out.detail = msg.str();
                return out;
            }
            ++checked;
        }
    }

    out.ok = checked == 400;
    out.detail = std::to_string(checked) + " shear-free configurations obey the parity ledger";
    return out;
}

Outcome criterion_polygon_images() {
    Outcome out;
    std::ostringstream msg;
    bool any_ten = false;

    for (const double rho : {0.5, 1.0}) {
        const harmlens::LensConfig config = harmlens::polygon_lens(3, rho);
        const harmlens::ImageSet set = harmlens::find_images(config, Cx(0.0));
        msg << "rho " << rho << ": " << set.images.size() << " images; ";
        if (set.images.size() != 10) continue;

        std::vector<oracle::OracleMass> masses;
        for (const auto& m : config.masses) masses.push_back({m.mass, m.position});
        const std::vector<Cx> searched =
            oracle::lens_image_search(masses, 0.0, +1, Cx(0.0), 3.0, 480, 3);
        if (searched.size() == 10 &&
            oracle::sets_match(locations_of(set.images), searched, kOracleMatchTol)) {
            any_ten = true;
            msg << "oracle confirms 10; ";
        } else {
            msg << "oracle found " << searched.size() << "; ";
        }
    }

    out.ok = any_ten;
    out.detail = msg.str();
    return out;
}

Outcome criterion_extended_reduction() {
    const std::vector<harmlens::RadialBlob> blobs = {
        harmlens::RadialBlob{Cx(0.35, 0.2), 0.5, 0.12},
        harmlens::RadialBlob{Cx(-0.3, -0.15), 0.5, 0.1}};
    const Cx source(0.07, 0.03);

    const harmlens::ExtendedImageSet extended =
        harmlens::find_images_extended(blobs, 0.0, +1, source);
    const harmlens::ExtendedReduction reduction = harmlens::reduce_extended(blobs, 0.0, +1);
    const harmlens::ImageSet direct = harmlens::find_images(reduction.config, source);

    std::vector<Cx> direct_outside;
    for (const auto& image : direct.images) {
        const bool outside = std::ranges::all_of(blobs, [&](const auto& b) {
            return std::abs(image.location - b.center) > b.support_radius;
        });
        if (outside) direct_outside.push_back(image.location);
    }

    bool ok = match_absolute(locations_of(extended.outside), direct_outside, kExtendedMatchTol);

    // The same exterior images must satisfy the genuinely extended model,
    // with each deflector integrated by ring quadrature over its disk.
    double worst = 0.0;
    for (const auto& image : extended.outside) {
        Cx residual = image.location - source;
        for (const auto& b : blobs) {
            residual -= oracle::blob_deflection(b.center, b.mass, b.support_radius, 0,
                                                image.location);
        }
        worst = std::max(worst, std::abs(residual));
    }
    ok = ok && worst < kExtendedMatchTol;

    Outcome out;
    std::ostringstream msg;
    msg << extended.outside.size() << " exterior images agree; worst integrated residual "
        << worst;
    out.ok = ok;
    out.detail = msg.str();
    return out;
}

Outcome criterion_oracle_equivalence() {
    testutil::Rng rng(0xD1CEu);
    harmlens::SolveOptions opts;
    opts.compute_winding = false;

    auto zeros_match = [&](const Rational& r) {
        const harmlens::SolveReport report = harmlens::solve_zeros(r, opts);
        if (report.has_singular()) return -1;  // caller resamples
        const Rational dr = r.derivative();
        for (const auto& z : report.zeros) {
            const Cx d = dr.eval(z.location);
            if (!harmlens::is_finite(d) || std::abs(std::abs(d) - 1.0) < kSingularBand) {
                return -1;
            }
        }
        const std::vector<Cx> searched =
            oracle::zero_search(r.num().coeffs(), r.den().coeffs(), 6.0, 600, 4);
        return oracle::sets_match(locations_of(report.zeros), searched, kOracleMatchTol) ? 1 : 0;
    };

    Outcome out;
    if (zeros_match(example_map()) != 1) {
        out.detail = "oracle disagrees on the reference example";
        return out;
    }

    int done = 0;
    int draws = 0;
    while (done < 50 && draws < 600) {
        ++draws;
        const int degree = 2 + static_cast<int>(rng.next() % 2);
        std::vector<Cx> num(static_cast<std::size_t>(degree) + 1);
        std::vector<Cx> den(static_cast<std::size_t>(degree) + 1);
        for (Cx& c : num) c = rng.box(1.0);
        for (Cx& c : den) c = rng.box(1.0);
        num.back() = rng.ring(0.5, 1.5);
        den.back() = rng.ring(0.5, 1.5);
        Rational r = example_map();
        try {
            r = Rational(Polynomial{std::move(num)}, Polynomial{std::move(den)});
        } catch (const harmlens::InvalidInputError&) {
            continue;
        }
        const int verdict = zeros_match(r);
        if (verdict == -1) continue;  // near-singular draw, ill-posed comparison
        if (verdict == 0) {
            out.detail = "oracle mismatch on draw " + std::to_string(draws);
            return out;
        }
        ++done;
    }

    out.ok = done == 50;
    out.detail = std::to_string(done) + " random functions matched the grid oracle (" +
                 std::to_string(draws) + " draws)";
    return out;
}

Outcome criterion_region_structure() {
    const harmlens::Bbox box{-2.0, 3.0, -2.0, 2.0};
    Outcome out;
    std::ostringstream msg;
    bool ok = true;

    for (const int res : {512, 1024}) {
        const harmlens::CurveSet curves =
            harmlens::trace_critical_set(example_map(), box, res);
        msg << "res " << res << ": " << curves.regions.size() << " regions; ";
        if (curves.regions.size() != 3) {
            ok = false;
            continue;
        }
        const harmlens::RegionInfo* unbounded = nullptr;
        std::vector<const harmlens::RegionInfo*> bounded;
        for (const auto& region : curves.regions) {
            if (region.unbounded) unbounded = &region;
            else bounded.push_back(&region);
        }
        if (unbounded == nullptr || bounded.size() != 2) {
            ok = false;
            continue;
        }
        std::ranges::sort(bounded, [](const auto* a, const auto* b) {
            return a->cell_count > b->cell_count;
        });
        ok = ok && unbounded->orientation == Orientation::SensePreserving;
        ok = ok && bounded[0]->orientation == Orientation::SenseReversing;
        ok = ok && bounded[1]->orientation == Orientation::SensePreserving;
    }

    out.ok = ok;
    out.detail = msg.str() + (ok ? "pattern preserving/reversing/preserving" : "pattern broken");
    return out;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"reference example zero set", criterion_example_zeros},
        {"argument-principle ledger", criterion_argument_principle},
        {"critical orbit census", criterion_orbit_census},
        {"random bound census", criterion_bound_census},
        {"lens parity law", criterion_lens_parity},
        {"polygon lens images", criterion_polygon_images},
        {"extended-mass reduction", criterion_extended_reduction},
        {"grid oracle equivalence", criterion_oracle_equivalence},
        {"orientation region structure", criterion_region_structure},
    };

    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome outcome;
        try {
            outcome = criteria[k].second();
        } catch (const std::exception& e) {
            outcome.ok = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        if (!outcome.ok) ++failures;
        std::printf("[%s] criterion %zu: %s: %s\n", outcome.ok ? "PASS" : "FAIL", k + 1,
                    criteria[k].first.c_str(), outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
