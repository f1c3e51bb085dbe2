#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "harmlens/rational.hpp"

namespace harmlens {

enum class Orientation { SensePreserving, SenseReversing, Singular };
const char* to_string(Orientation o);

/// One zero of f(z) = conj(r(z)) - z.
struct HarmonicZero {
    Cx location;
    double residual = 0.0;     // |conj(r(z)) - z|
    double r_prime_abs = 0.0;  // |r'(z)|
    double jacobian = 0.0;     // 1 - |r'(z)|^2
    Orientation orientation = Orientation::Singular;
    std::optional<int> index;  // +1 preserving, -1 reversing, empty when singular
};

struct PoleOrder {
    Cx location;
    int order = -1;  // -multiplicity
};

struct SolveOptions {
    /// Final acceptance: |conj(r(z)) - z| <= tol_accept * (1 + |z|).
    double tol_accept = 1e-8;
    double dedupe_rel = 1e-6;
    /// Orientation band: |r'| within eps_singular of 1 is singular.
    double eps_singular = 1e-6;
    bool perturb = false;
    int max_perturb_retries = 5;
    std::uint64_t perturb_seed = 0x5eed5eedULL;
    bool compute_winding = true;
    int winding_samples = 512;
    double contour_guard_rel = 1e-5;
    RootOptions root_options{};
};

struct SolveReport {
    int degree_n = 0;
    std::vector<HarmonicZero> zeros;
    std::vector<PoleOrder> pole_orders;
    int n_plus = 0;
    int n_minus = 0;
    int n_singular = 0;
    int pole_order_sum = 0;  // sum of (negative) pole orders
    bool bound_5n5_ok = false;
    bool bound_2n2_ok = false;
    double large_circle_radius = 0.0;
    std::optional<int> winding_large_circle;
    std::optional<bool> argument_principle_ok;
    std::optional<Cx> perturbation_applied;
    int candidate_count = 0;

    bool has_singular() const { return n_singular > 0; }
    int zero_count() const { return static_cast<int>(zeros.size()); }
};

/// f(z) = conj(r(z)) - z; complex infinity propagates from r.
Cx harmonic_value(const Rational& r, Cx z);

/// The analytic second iterate: Q(z) = conj(r(conj(r(z)))), built as
/// reflect(r) composed with r. Degree n^2 for deg r = n. Throws
/// DegreeTooLowError for deg r <= 1.
Rational build_q(const Rational& r);

/// Roots of num(Q) - z * den(Q); candidates coinciding with denominator
/// roots are removable points of the unreduced representation and dropped.
RootSet fixed_point_candidates(const Rational& q, const RootOptions& opts = {});

/// Zero finding + classification + argument-principle bookkeeping.
SolveReport solve_zeros(const Rational& r, const SolveOptions& opts = {});

std::vector<PoleOrder> pole_orders(const Rational& r, const RootOptions& opts = {});

/// Winding number of f around a circle, by adaptively resampled principal-
/// branch argument increments (every accepted step < pi/2). Throws
/// ContourTooCloseError when the circle grazes a pole or zero and
/// NonConvergentError when refinement cannot settle.
int winding(const Rational& r, Cx center, double radius, int samples = 512,
            double guard_rel = 1e-5);

struct Contour {
    Cx center;
    double radius = 1.0;
};

struct ContourCheck {
    Contour contour;
    int winding = 0;
    int expected = 0;
    bool ok = false;
};

/// Per contour: winding equals (sum of zero indices) - (sum of pole orders)
/// over the enclosed points. Zeros and poles must clear the guard distance.
std::vector<ContourCheck> verify_argument_principle(const Rational& r,
                                                    const SolveReport& report,
                                                    std::span<const Contour> contours,
                                                    int samples = 512,
                                                    double guard_rel = 1e-5);

struct OrbitAttribution {
    Cx zero;
    int attracted = 0;  // critical points, counted with multiplicity
};

struct CensusReport {
    int total_critical = 0;  // 2 n^2 - 2
    int finite_critical = 0;
    int infinity_multiplicity = 0;
    int unresolved = 0;
    std::vector<OrbitAttribution> attributions;

    int attracted_total() const {
        int s = 0;
        for (const OrbitAttribution& a : attributions) s += a.attracted;
        return s;
    }
};

/// Forward orbits of the critical points of Q under Q. A critical point is
/// attributed to a sense-preserving (or singular) zero once its orbit enters
/// and stays inside the attraction tolerance; orbits that exhaust the budget
/// stay unresolved (advisory, not an error).
CensusReport critical_orbit_census(const Rational& r, const SolveReport& report,
                                   int max_iter = 500, double tol_attract_rel = 1e-6);

}  // namespace harmlens
