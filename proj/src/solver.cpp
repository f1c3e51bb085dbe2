#include "harmlens/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "harmlens/errors.hpp"
#include "rng.hpp"

namespace harmlens {

namespace {

double relative_scale(const Rational& r) {
    const double dp = std::max(r.den().max_coeff_abs(), 1e-300);
    return std::max(1.0, r.num().max_coeff_abs() / dp);
}

Orientation classify_orientation(double r_prime_abs, double eps_singular) {
    if (r_prime_abs < 1.0 - eps_singular) return Orientation::SensePreserving;
    if (r_prime_abs > 1.0 + eps_singular) return Orientation::SenseReversing;
    return Orientation::Singular;
}

struct Candidate {
    Cx location;
    int multiplicity;
};

// One solve pass with no perturbation handling.
SolveReport solve_once(const Rational& r, const SolveOptions& opts) {
    SolveReport report;
    report.degree_n = r.degree();

    const Rational q = build_q(r);
    const RootSet candidates = fixed_point_candidates(q, opts.root_options);
    report.candidate_count = static_cast<int>(candidates.roots.size());

    const Rational rp = r.derivative();

    struct Accepted {
        Cx location;
        double residual;
        double r_prime_abs;
        int source_multiplicity;
    };
    std::vector<Accepted> accepted;

    // Every start gets polished; the residual acceptance below is the only
    // gate. Two-cycles of the conjugated map either fail it or converge onto a
    // zero someone else already found, where deduplication absorbs them. A
    // candidate displaced by the fixed-point polynomial's conditioning still
    // reaches its zero this way even when the displacement is macroscopic.
    const auto polish_accept = [&](Cx z, int multiplicity_vote) {
        const Cx start = z;
        Cx f = harmonic_value(r, z);
        if (!is_finite(f)) return;

        // Newton on the underlying 2x2 real system. With a = df/dz = -1 and
        // b = df/dzbar = conj(r'(z)) the update solves a*d + b*conj(d) = -f,
        // giving d = (f + conj(f) conj(r')) / (1 - |r'|^2).
        for (int iter = 0; iter < 60; ++iter) {
            const Cx rpv = rp.eval(z);
            if (!is_finite(rpv)) break;
            const double jac = 1.0 - std::norm(rpv);
            if (std::abs(jac) < opts.eps_singular) break;  // polish skipped in the singular band
            f = harmonic_value(r, z);
            if (!is_finite(f)) break;
            if (std::abs(f) <= 1e-15 * (1.0 + std::abs(z))) break;
            const Cx delta = (f + std::conj(f) * std::conj(rpv)) / jac;
            if (!is_finite(delta)) break;
            z += delta;
            if (std::abs(delta) < 1e-16 * (1.0 + std::abs(z))) break;
        }

        f = harmonic_value(r, z);
        if (!is_finite(f)) return;
        if (std::abs(f) > opts.tol_accept * (1.0 + std::abs(z))) return;
        const Cx rpv = rp.eval(z);
        if (!is_finite(rpv)) return;

        // Coincident fixed-point roots signal a degenerate zero, but only when
        // the start actually sat there. One that travelled under polish arrived
        // from somewhere else and carries no multiplicity evidence.
        const bool native =
            std::abs(z - start) <= 10.0 * opts.dedupe_rel * (1.0 + std::abs(z));
        accepted.push_back(Accepted{z, std::abs(f), std::abs(rpv), native ? multiplicity_vote : 0});
    };

    for (const RootRecord& cand : candidates.roots) {
        polish_accept(cand.location, cand.multiplicity);
    }

    report.pole_orders = pole_orders(r, opts.root_options);
    report.pole_order_sum = 0;
    for (const PoleOrder& p : report.pole_orders) report.pole_order_sum += p.order;

    // Zeros attached to a pole, or wedged between two nearby poles, sit where
    // the fixed-point polynomial is worst conditioned, so every candidate can
    // start outside the narrow Newton basin around them. Deterministic rings
    // around each pole reseed those regions; the geometric radius ladder spans
    // from well inside the pole's own field down to the spacing of its nearest
    // neighbour. Rings carry no multiplicity vote and duplicates fall to the
    // dedupe pass.
    for (std::size_t i = 0; i < report.pole_orders.size(); ++i) {
        const Cx pk = report.pole_orders[i].location;
        double spacing = 1.0 + std::abs(pk);
        for (std::size_t j = 0; j < report.pole_orders.size(); ++j) {
            if (j == i) continue;
            spacing = std::min(spacing, std::abs(pk - report.pole_orders[j].location));
        }
        for (const double frac : {0.015625, 0.03125, 0.0625, 0.125, 0.25, 0.5, 1.0}) {
            for (int t = 0; t < 16; ++t) {
                const double ang = 2.0 * std::numbers::pi * (t + 0.5) / 16.0;
                polish_accept(pk + std::polar(frac * spacing, ang), 0);
            }
        }
    }

    // Dedupe: distinct candidates polishing into one location count once.
    const int m = static_cast<int>(accepted.size());
    std::vector<int> parent(static_cast<std::size_t>(m));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[static_cast<std::size_t>(i)] != i) {
            parent[static_cast<std::size_t>(i)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
            i = parent[static_cast<std::size_t>(i)];
        }
        return i;
    };
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const double radius =
                opts.dedupe_rel *
                (1.0 + 0.5 * (std::abs(accepted[static_cast<std::size_t>(i)].location) +
                              std::abs(accepted[static_cast<std::size_t>(j)].location)));
            if (std::abs(accepted[static_cast<std::size_t>(i)].location -
                         accepted[static_cast<std::size_t>(j)].location) <= radius) {
                const int ri = find(i), rj = find(j);
                if (ri != rj) parent[static_cast<std::size_t>(rj)] = ri;
            }
        }
    }

    std::vector<std::vector<int>> groups;
    {
        std::vector<int> label(static_cast<std::size_t>(m), -1);
        for (int i = 0; i < m; ++i) {
            const int rt = find(i);
            if (label[static_cast<std::size_t>(rt)] < 0) {
                label[static_cast<std::size_t>(rt)] = static_cast<int>(groups.size());
                groups.emplace_back();
            }
            groups[static_cast<std::size_t>(label[static_cast<std::size_t>(rt)])].push_back(i);
        }
    }

    for (const std::vector<int>& group : groups) {
        int best = group.front();
        int merged_multiplicity = 0;
        for (int i : group) {
            merged_multiplicity += accepted[static_cast<std::size_t>(i)].source_multiplicity;
            if (accepted[static_cast<std::size_t>(i)].residual <
                accepted[static_cast<std::size_t>(best)].residual) {
                best = i;
            }
        }
        const Accepted& a = accepted[static_cast<std::size_t>(best)];
        HarmonicZero zero;
        zero.location = a.location;
        zero.residual = a.residual;
        zero.r_prime_abs = a.r_prime_abs;
        zero.jacobian = 1.0 - a.r_prime_abs * a.r_prime_abs;
        zero.orientation = classify_orientation(a.r_prime_abs, opts.eps_singular);
        // A fixed-point cluster of size > 1 collapsing onto one zero signals a
        // degenerate (multiple) zero even if |r'| sits off the unit circle.
        if (merged_multiplicity > 1) zero.orientation = Orientation::Singular;
        if (zero.orientation == Orientation::SensePreserving) zero.index = 1;
        if (zero.orientation == Orientation::SenseReversing) zero.index = -1;
        report.zeros.push_back(zero);
    }

    std::sort(report.zeros.begin(), report.zeros.end(),
              [](const HarmonicZero& x, const HarmonicZero& y) {
                  if (x.location.real() != y.location.real())
                      return x.location.real() < y.location.real();
                  return x.location.imag() < y.location.imag();
              });

    for (const HarmonicZero& z : report.zeros) {
        switch (z.orientation) {
            case Orientation::SensePreserving: ++report.n_plus; break;
            case Orientation::SenseReversing: ++report.n_minus; break;
            case Orientation::Singular: ++report.n_singular; break;
        }
    }

    const int n = report.degree_n;
    report.bound_5n5_ok = report.zero_count() <= 5 * n - 5;
    report.bound_2n2_ok = report.n_plus <= 2 * n - 2;

    double max_mod = 0.0;
    for (const HarmonicZero& z : report.zeros) max_mod = std::max(max_mod, std::abs(z.location));
    for (const PoleOrder& p : report.pole_orders) max_mod = std::max(max_mod, std::abs(p.location));
    report.large_circle_radius = 2.0 * (1.0 + max_mod);

    if (opts.compute_winding) {
        try {
            report.winding_large_circle = winding(r, Cx(0.0), report.large_circle_radius,
                                                  opts.winding_samples, opts.contour_guard_rel);
            report.argument_principle_ok =
                report.n_singular == 0 &&
                *report.winding_large_circle ==
                    (report.n_plus - report.n_minus) - report.pole_order_sum;
        } catch (const NumericalError&) {
            report.winding_large_circle.reset();
            report.argument_principle_ok.reset();
        }
    }
    return report;
}

}  // namespace

const char* to_string(Orientation o) {
    switch (o) {
        case Orientation::SensePreserving: return "sense_preserving";
        case Orientation::SenseReversing: return "sense_reversing";
        case Orientation::Singular: return "singular";
    }
    return "singular";
}

Cx harmonic_value(const Rational& r, Cx z) {
    const Cx v = r.eval(z);
    if (!is_finite(v)) return complex_infinity();
    return std::conj(v) - z;
}

Rational build_q(const Rational& r) {
    if (r.degree() <= 1) {
        throw DegreeTooLowError("conjugated second iterate needs deg r >= 2");
    }
    return r.reflect().compose(r);
}

RootSet fixed_point_candidates(const Rational& q, const RootOptions& opts) {
    Polynomial fixed_poly = q.num() - Polynomial::identity() * q.den();
    if (fixed_poly.is_zero() || fixed_poly.degree() < 1) {
        throw NonConvergentError("fixed-point polynomial degenerated");
    }
    // The fixed-point polynomial of a composed map carries a wide coefficient
    // range, so its evaluation noise floor can dwarf the spacing of perfectly
    // good candidates. Keep near-coincident approximants as separate starting
    // points; the harmonic Newton polish downstream resolves finer than this
    // polynomial's own evaluation can.
    RootOptions candidate_opts = opts;
    candidate_opts.merge_unresolvable = false;
    RootSet rs = find_roots(fixed_poly, candidate_opts);
    if (q.den().degree() >= 1) {
        const RootSet den_roots = find_roots(q.den(), opts);
        std::vector<RootRecord> kept;
        kept.reserve(rs.roots.size());
        for (const RootRecord& cand : rs.roots) {
            bool removable = false;
            for (const RootRecord& dr : den_roots.roots) {
                const double radius = opts.cluster_rel * (1.0 + std::abs(cand.location));
                if (std::abs(cand.location - dr.location) <= radius) {
                    removable = true;
                    break;
                }
            }
            if (!removable) kept.push_back(cand);
        }
        rs.roots = std::move(kept);
    }
    return rs;
}

std::vector<PoleOrder> pole_orders(const Rational& r, const RootOptions& opts) {
    std::vector<PoleOrder> out;
    for (const Pole& p : r.poles(opts)) out.push_back(PoleOrder{p.location, -p.multiplicity});
    return out;
}

SolveReport solve_zeros(const Rational& r, const SolveOptions& opts) {
    if (!r.is_reduced()) {
        throw InvalidInputError("solve_zeros requires a reduced rational function");
    }
    if (r.degree() <= 1) {
        throw DegreeTooLowError("zero counting requires deg r >= 2 (bound undefined below)");
    }

    SolveReport report = solve_once(r, opts);
    if (!report.has_singular() || !opts.perturb) return report;

    // Singular zeros sit on the critical set; a small generic shift of r is
    // regular for almost every direction, so retry on a deterministic sample
    // of directions and keep the first regular outcome.
    SplitMix64 rng(opts.perturb_seed);
    const double magnitude = 1e-6 * relative_scale(r);
    for (int attempt = 0; attempt < opts.max_perturb_retries; ++attempt) {
        const double angle = 2.0 * std::numbers::pi * rng.uniform01();
        const Cx c = std::polar(magnitude, angle);
        const Polynomial shifted_num = r.num() - c * r.den();
        Rational shifted(shifted_num, r.den());
        SolveReport retry = solve_once(shifted, opts);
        retry.perturbation_applied = c;
        if (!retry.has_singular()) return retry;
        if (attempt + 1 == opts.max_perturb_retries) return retry;
    }
    return report;
}

int winding(const Rational& r, Cx center, double radius, int samples, double guard_rel) {
    if (radius <= 0.0) throw InvalidInputError("winding needs a positive radius");
    samples = std::max(samples, 16);
    const double guard = guard_rel * (1.0 + radius);

    if (r.is_reduced() && r.den().degree() >= 1) {
        for (const Pole& p : r.poles()) {
            const double dist = std::abs(std::abs(p.location - center) - radius);
            if (dist < guard) {
                throw ContourTooCloseError("contour passes too close to a pole");
            }
        }
    }

    const double f_floor = 1e-9 * (1.0 + radius);
    auto sample_f = [&](double theta) {
        const Cx z = center + std::polar(radius, theta);
        const Cx v = harmonic_value(r, z);
        if (!is_finite(v)) throw ContourTooCloseError("f blows up on the contour");
        if (std::abs(v) < f_floor) throw ContourTooCloseError("contour passes too close to a zero");
        return v;
    };

    struct Segment {
        double t0, t1;
        Cx f0, f1;
        int depth;
    };
    std::vector<Segment> stack;
    stack.reserve(static_cast<std::size_t>(samples) * 2);
    const double step = 2.0 * std::numbers::pi / samples;
    std::vector<Cx> base(static_cast<std::size_t>(samples) + 1);
    for (int k = 0; k <= samples; ++k) {
        base[static_cast<std::size_t>(k)] =
            (k == samples) ? base[0] : sample_f(step * k);
    }
    for (int k = samples - 1; k >= 0; --k) {
        stack.push_back(Segment{step * k, step * (k + 1), base[static_cast<std::size_t>(k)],
                                base[static_cast<std::size_t>(k) + 1], 0});
    }

    double total = 0.0;
    while (!stack.empty()) {
        const Segment seg = stack.back();
        stack.pop_back();
        const double inc = std::arg(seg.f1 / seg.f0);
        if (std::abs(inc) < std::numbers::pi / 2.0) {
            total += inc;
            continue;
        }
        if (seg.depth >= 26) {
            throw NonConvergentError("winding refinement exceeded the subdivision cap");
        }
        const double tm = 0.5 * (seg.t0 + seg.t1);
        const Cx fm = sample_f(tm);
        stack.push_back(Segment{tm, seg.t1, fm, seg.f1, seg.depth + 1});
        stack.push_back(Segment{seg.t0, tm, seg.f0, fm, seg.depth + 1});
    }

    const double turns = total / (2.0 * std::numbers::pi);
    const long long nearest = std::llround(turns);
    if (std::abs(turns - static_cast<double>(nearest)) > 0.25) {
        throw NonConvergentError("winding sum is not close to an integer");
    }
    return static_cast<int>(nearest);
}

std::vector<ContourCheck> verify_argument_principle(const Rational& r, const SolveReport& report,
                                                    std::span<const Contour> contours, int samples,
                                                    double guard_rel) {
    std::vector<ContourCheck> out;
    out.reserve(contours.size());
    for (const Contour& c : contours) {
        const double guard = guard_rel * (1.0 + c.radius);
        for (const HarmonicZero& z : report.zeros) {
            if (std::abs(std::abs(z.location - c.center) - c.radius) < guard) {
                throw ContourTooCloseError("contour passes too close to a zero");
            }
        }
        for (const PoleOrder& p : report.pole_orders) {
            if (std::abs(std::abs(p.location - c.center) - c.radius) < guard) {
                throw ContourTooCloseError("contour passes too close to a pole");
            }
        }

        ContourCheck check;
        check.contour = c;
        int expected = 0;
        bool enclosed_singular = false;
        for (const HarmonicZero& z : report.zeros) {
            if (std::abs(z.location - c.center) < c.radius) {
                if (z.index) expected += *z.index;
                else enclosed_singular = true;
            }
        }
        for (const PoleOrder& p : report.pole_orders) {
            if (std::abs(p.location - c.center) < c.radius) expected -= p.order;
        }
        check.expected = expected;
        check.winding = winding(r, c.center, c.radius, samples, guard_rel);
        check.ok = !enclosed_singular && check.winding == check.expected;
        out.push_back(check);
    }
    return out;
}

CensusReport critical_orbit_census(const Rational& r, const SolveReport& report, int max_iter,
                                   double tol_attract_rel) {
    const int n = r.degree();
    if (n <= 1) throw DegreeTooLowError("critical orbit census needs deg r >= 2");
    const Rational q = build_q(r);

    CensusReport census;
    census.total_critical = 2 * n * n - 2;

    // Numerator of Q': its roots are the finite critical points of Q,
    // including multiple poles with multiplicity (order - 1). The degree can
    // never exceed 2n^2 - 2; anything above that is cancellation noise.
    Polynomial w = q.num().derivative() * q.den() - q.num() * q.den().derivative();
    if (!w.is_zero() && w.degree() > census.total_critical) {
        std::vector<Cx> trimmed(w.coeffs().begin(),
                                w.coeffs().begin() + census.total_critical + 1);
        w = Polynomial(std::move(trimmed));
    }
    census.finite_critical = w.is_zero() ? 0 : w.degree();
    census.infinity_multiplicity = census.total_critical - census.finite_critical;

    std::vector<const HarmonicZero*> targets;
    for (const HarmonicZero& z : report.zeros) {
        if (z.orientation != Orientation::SenseReversing) targets.push_back(&z);
    }
    std::vector<int> attracted(targets.size(), 0);

    const int dn = q.num().is_zero() ? Polynomial::kZeroDegree : q.num().degree();
    const int dd = q.den().degree();
    const bool infinity_fixed = !q.num().is_zero() && dn > dd;
    auto q_at_infinity = [&]() -> Cx {
        if (q.num().is_zero() || dn < dd) return Cx(0.0);
        return q.num().leading() / q.den().leading();
    };

    struct CriticalPoint {
        bool at_infinity;
        Cx location;
        int multiplicity;
    };
    std::vector<CriticalPoint> points;
    if (census.finite_critical >= 1) {
        for (const RootRecord& root : find_roots(w).roots) {
            points.push_back(CriticalPoint{false, root.location, root.multiplicity});
        }
    }
    if (census.infinity_multiplicity > 0) {
        points.push_back(CriticalPoint{true, Cx(0.0), census.infinity_multiplicity});
    }

    constexpr int kConfirmSteps = 10;
    for (const CriticalPoint& cp : points) {
        bool at_inf = cp.at_infinity;
        Cx z = cp.location;
        int near_target = -1;
        int near_streak = 0;
        bool attributed = false;

        for (int it = 0; it < max_iter; ++it) {
            if (at_inf) {
                if (infinity_fixed) break;  // orbit stays at infinity
                z = q_at_infinity();
                at_inf = false;
            } else {
                const Cx v = q.eval(z);
                if (!is_finite(v)) {
                    at_inf = true;
                    continue;
                }
                z = v;
            }

            int hit = -1;
            for (std::size_t t = 0; t < targets.size(); ++t) {
                const Cx loc = targets[t]->location;
                if (std::abs(z - loc) <= tol_attract_rel * (1.0 + std::abs(loc))) {
                    hit = static_cast<int>(t);
                    break;
                }
            }
            if (hit >= 0 && hit == near_target) {
                if (++near_streak >= kConfirmSteps) {
                    attracted[static_cast<std::size_t>(hit)] += cp.multiplicity;
                    attributed = true;
                    break;
                }
            } else {
                near_target = hit;
                near_streak = hit >= 0 ? 1 : 0;
            }
        }
        if (!attributed) census.unresolved += cp.multiplicity;
    }

    for (std::size_t t = 0; t < targets.size(); ++t) {
        census.attributions.push_back(OrbitAttribution{targets[t]->location,
                                                       attracted[t]});
    }
    return census;
}

}  // namespace harmlens
