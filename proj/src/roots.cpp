#include "harmlens/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "harmlens/errors.hpp"

namespace harmlens {

namespace {

// p and p' at z in one Horner pass over monic coefficients.
void eval_with_derivative(const std::vector<Cx>& a, Cx z, Cx& p, Cx& dp) {
    p = Cx(0.0);
    dp = Cx(0.0);
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
}

std::vector<Cx> initial_guesses(const std::vector<Cx>& a) {
    const int n = static_cast<int>(a.size()) - 1;
    double tail_max = 0.0;
    for (int k = 0; k < n; ++k) tail_max = std::max(tail_max, std::abs(a[k]));
    const double r_up = 1.0 + tail_max;  // Cauchy bound on root moduli
    double above = 0.0;
    for (int k = 1; k <= n; ++k) above = std::max(above, std::abs(a[k]));
    double r_lo = std::abs(a[0]) > 0.0 ? std::abs(a[0]) / (1.0 + above) : 0.1 * r_up;
    r_lo = std::clamp(r_lo, 1e-3 * r_up, 0.9 * r_up);

    // Deterministic spiral between the modulus bounds; the golden-ratio turn
    // plus irrational phase offset keeps guesses away from symmetry axes.
    constexpr double kTurn = 0.6180339887498949;
    constexpr double kPhase = 0.3183098861837907;
    std::vector<Cx> z(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double t = (j + 0.5) / n;
        const double radius = r_lo * std::pow(r_up / r_lo, t);
        const double angle = 2.0 * std::numbers::pi * (kTurn * j + kPhase);
        z[static_cast<std::size_t>(j)] = std::polar(radius, angle);
    }
    return z;
}

}  // namespace

std::vector<Cx> RootSet::locations() const {
    std::vector<Cx> out;
    out.reserve(roots.size());
    for (const RootRecord& r : roots) out.push_back(r.location);
    return out;
}

std::vector<Cx> RootSet::locations_with_multiplicity() const {
    std::vector<Cx> out;
    out.reserve(static_cast<std::size_t>(degree_accounted));
    for (const RootRecord& r : roots) {
        for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.location);
    }
    return out;
}

RootSet find_roots(const Polynomial& poly, const RootOptions& opts) {
    if (poly.is_zero() || poly.degree() < 1) {
        throw InvalidInputError("find_roots requires a polynomial of degree >= 1");
    }
    const int n = poly.degree();
    const Cx lead = poly.leading();

    std::vector<Cx> a(poly.coeffs());
    for (Cx& c : a) c /= lead;
    a.back() = Cx(1.0);
    double monic_peak = 0.0;
    for (const Cx& c : a) monic_peak = std::max(monic_peak, std::abs(c));

    RootSet result;
    std::vector<Cx> z;
    if (n == 1) {
        z.push_back(-a[0]);
    } else {
        z = initial_guesses(a);

        // Gauss-Seidel Aberth sweeps.
        bool converged = false;
        for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
            double worst = 0.0;
            for (int i = 0; i < n; ++i) {
                Cx p, dp;
                eval_with_derivative(a, z[static_cast<std::size_t>(i)], p, dp);
                if (p == Cx(0.0)) continue;
                const Cx w = (dp != Cx(0.0)) ? p / dp : p;
                Cx repulsion(0.0);
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    Cx diff = z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
                    const double scale = 1e-14 * (1.0 + std::abs(z[static_cast<std::size_t>(i)]));
                    if (std::abs(diff) < scale) diff = Cx(scale);
                    repulsion += Cx(1.0) / diff;
                }
                const Cx denom = Cx(1.0) - w * repulsion;
                const Cx delta = (std::abs(denom) > 1e-300) ? w / denom : w;
                if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) continue;
                z[static_cast<std::size_t>(i)] -= delta;
                worst = std::max(worst,
                                 std::abs(delta) / (1.0 + std::abs(z[static_cast<std::size_t>(i)])));
            }
            if (worst < opts.converge_rel) converged = true;
        }
        result.converged = converged;
    }

    // Newton polish.
    for (Cx& root : z) {
        for (int s = 0; s < opts.polish_steps; ++s) {
            Cx p, dp;
            eval_with_derivative(a, root, p, dp);
            if (std::abs(dp) < 1e-300) break;
            const Cx step = p / dp;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            root -= step;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(root))) break;
        }
    }

    // Evaluation roundoff floor at |z|: eps * sum |a_k| |z|^k. Inside a
    // multiple root's basin p itself rounds to zero, so error estimates and
    // distinguishability tests both measure against this floor instead.
    const auto noise_floor = [&a](double z_abs) {
        double abs_sum = 0.0;
        for (auto it = a.rbegin(); it != a.rend(); ++it) abs_sum = abs_sum * z_abs + std::abs(*it);
        return std::numeric_limits<double>::epsilon() * abs_sum;
    };

    // First-order error estimates screen candidate pairs for merging: near an
    // m-fold root the approximants spread over a radius ~eps^(1/m), far wider
    // than the plain cluster radius.
    std::vector<double> err(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        Cx p, dp;
        eval_with_derivative(a, z[static_cast<std::size_t>(i)], p, dp);
        const double zi_abs = std::abs(z[static_cast<std::size_t>(i)]);
        const double cap = 1e-2 * (1.0 + zi_abs);
        err[static_cast<std::size_t>(i)] = std::min(
            (std::abs(p) + noise_floor(zi_abs)) / std::max(std::abs(dp), 1e-300), cap);
    }

    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[static_cast<std::size_t>(i)] != i) {
            parent[static_cast<std::size_t>(i)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
            i = parent[static_cast<std::size_t>(i)];
        }
        return i;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Cx mid = 0.5 * (z[static_cast<std::size_t>(i)] + z[static_cast<std::size_t>(j)]);
            const double base = opts.cluster_rel * (1.0 + std::abs(mid));
            const double dist =
                std::abs(z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
            bool same_root = dist <= base;
            if (!same_root && opts.merge_unresolvable &&
                dist <= 10.0 * (err[static_cast<std::size_t>(i)] +
                                err[static_cast<std::size_t>(j)])) {
                // Distinct nearby roots are resolvable: p clears the roundoff
                // floor between them. A multiple root's whole basin does not,
                // so indistinguishability at the midpoint decides the merge.
                Cx pm, dpm;
                eval_with_derivative(a, mid, pm, dpm);
                const double floor = noise_floor(std::abs(mid));
                same_root = std::abs(pm) <= (2.0 * n + 1.0) * floor;
            }
            if (same_root) {
                const int ri = find(i), rj = find(j);
                if (ri != rj) parent[static_cast<std::size_t>(rj)] = ri;
            }
        }
    }

    std::vector<std::vector<int>> clusters;
    {
        std::vector<int> label(static_cast<std::size_t>(n), -1);
        for (int i = 0; i < n; ++i) {
            const int r = find(i);
            if (label[static_cast<std::size_t>(r)] < 0) {
                label[static_cast<std::size_t>(r)] = static_cast<int>(clusters.size());
                clusters.emplace_back();
            }
            clusters[static_cast<std::size_t>(label[static_cast<std::size_t>(r)])].push_back(i);
        }
    }

    for (const std::vector<int>& members : clusters) {
        Cx centroid(0.0);
        for (int i : members) centroid += z[static_cast<std::size_t>(i)];
        centroid /= static_cast<double>(members.size());

        // An m-fold root is a simple root of the (m-1)-th derivative, where
        // Newton reaches machine precision instead of the eps^(1/m) basin the
        // individual approximants are stuck in. The leash keeps a cluster of
        // genuinely distinct roots from escaping to a far-away critical point.
        const int m = static_cast<int>(members.size());
        if (m >= 2) {
            std::vector<Cx> d(a);
            for (int k = 1; k < m; ++k) {
                std::vector<Cx> next(d.size() - 1);
                for (std::size_t t = 1; t < d.size(); ++t) {
                    next[t - 1] = static_cast<double>(t) * d[t];
                }
                d = std::move(next);
            }
            double spread = 0.0;
            for (int i : members) {
                spread = std::max(spread, std::abs(z[static_cast<std::size_t>(i)] - centroid));
            }
            Cx refined = centroid;
            for (int s = 0; s < 40; ++s) {
                Cx p, dp;
                eval_with_derivative(d, refined, p, dp);
                if (std::abs(dp) < 1e-300) break;
                const Cx step = p / dp;
                if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
                refined -= step;
                if (std::abs(step) < 1e-16 * (1.0 + std::abs(refined))) break;
            }
            const double leash = spread + opts.cluster_rel * (1.0 + std::abs(centroid));
            if (std::abs(refined - centroid) <= leash) centroid = refined;
        }

        RootRecord rec;
        rec.location = centroid;
        rec.multiplicity = static_cast<int>(members.size());
        const double denom_scale = std::pow(1.0 + std::abs(centroid), n);
        rec.residual = std::abs(poly.eval(centroid)) / (std::abs(lead) * denom_scale);
        rec.certified = result.converged &&
                        rec.residual <= opts.certify_rel * std::max(1.0, monic_peak);
        result.roots.push_back(rec);
    }

    std::sort(result.roots.begin(), result.roots.end(), [](const RootRecord& x, const RootRecord& y) {
        if (x.location.real() != y.location.real()) return x.location.real() < y.location.real();
        return x.location.imag() < y.location.imag();
    });
    result.degree_accounted = n;
    for (const RootRecord& r : result.roots) {
        if (!r.certified) result.fully_certified = false;
    }
    return result;
}

bool coprimality_check(const Polynomial& p, const Polynomial& q, double tol) {
    if (p.is_zero() || q.is_zero()) {
        const Polynomial& other = p.is_zero() ? q : p;
        return !other.is_zero() && other.degree() == 0;
    }
    if (p.degree() == 0 || q.degree() == 0) return true;
    const RootSet rp = find_roots(p);
    const RootSet rq = find_roots(q);
    for (const RootRecord& a : rp.roots) {
        for (const RootRecord& b : rq.roots) {
            if (std::abs(a.location - b.location) < tol) return false;
        }
    }
    return true;
}

}  // namespace harmlens
