#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracle {

namespace {

bool finite(Cx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// 2x2 linear solve for the Newton step; returns false on a singular matrix.
bool solve2(double a, double b, double c, double d, double rhs0, double rhs1, double& x,
            double& y) {
    const double det = a * d - b * c;
    if (!std::isfinite(det) || std::abs(det) < 1e-300) return false;
    x = (rhs0 * d - rhs1 * b) / det;
    y = (a * rhs1 - c * rhs0) / det;
    return true;
}

template <typename F>
std::optional<Cx> newton2d(F&& f, Cx guess, int max_iter, double accept_rel) {
    Cx z = guess;
    for (int iter = 0; iter < max_iter; ++iter) {
        const Cx fz = f(z);
        if (!finite(fz)) return std::nullopt;
        const double h = 1e-7 * (1.0 + std::abs(z));
        const Cx fx1 = f(z + h);
        const Cx fx0 = f(z - h);
        const Cx fy1 = f(z + Cx(0.0, h));
        const Cx fy0 = f(z - Cx(0.0, h));
        if (!finite(fx1) || !finite(fx0) || !finite(fy1) || !finite(fy0)) return std::nullopt;
        const double a = (fx1.real() - fx0.real()) / (2.0 * h);
        const double c = (fx1.imag() - fx0.imag()) / (2.0 * h);
        const double b = (fy1.real() - fy0.real()) / (2.0 * h);
        const double d = (fy1.imag() - fy0.imag()) / (2.0 * h);
        double dx = 0.0;
        double dy = 0.0;
        if (!solve2(a, b, c, d, fz.real(), fz.imag(), dx, dy)) return std::nullopt;
        const Cx next = z - Cx(dx, dy);
        if (!finite(next)) return std::nullopt;
        if (std::abs(next - z) < 1e-13 * (1.0 + std::abs(next))) {
            z = next;
            break;
        }
        z = next;
    }
    const Cx fz = f(z);
    if (finite(fz) && std::abs(fz) <= accept_rel * (1.0 + std::abs(z))) return z;
    return std::nullopt;
}

template <typename F>
std::vector<Cx> search2d(F&& f, double extent, int grid, int stride, double dedupe_rel,
                         int max_iter, double accept_rel) {
    std::vector<Cx> found;
    auto consider = [&](Cx seed) {
        const auto z = newton2d(f, seed, max_iter, accept_rel);
        if (!z) return;
        for (Cx existing : found) {
            if (std::abs(existing - *z) <= dedupe_rel * (1.0 + std::abs(*z))) return;
        }
        found.push_back(*z);
    };
    const double step = 2.0 * extent / (grid - 1);
    for (int j = 0; j < grid; j += stride) {
        for (int i = 0; i < grid; i += stride) {
            consider(Cx(-extent + step * i, -extent + step * j));
        }
    }
    // Far seeds so basins reaching beyond the grid window are not missed.
    for (double radius : {1.5 * extent, 3.0 * extent, 6.0 * extent}) {
        for (int k = 0; k < 64; ++k) {
            const double angle = 2.0 * std::numbers::pi * k / 64;
            consider(std::polar(radius, angle));
        }
    }
    return found;
}

}  // namespace

Cx eval_poly(const std::vector<Cx>& ascending_coeffs, Cx z) {
    Cx acc(0.0);
    for (auto it = ascending_coeffs.rbegin(); it != ascending_coeffs.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

Cx eval_rational(const std::vector<Cx>& num, const std::vector<Cx>& den, Cx z) {
    return eval_poly(num, z) / eval_poly(den, z);
}

Cx harmonic_f(const std::vector<Cx>& num, const std::vector<Cx>& den, Cx z) {
    return std::conj(eval_rational(num, den, z)) - z;
}

std::optional<Cx> newton_zero(const std::vector<Cx>& num, const std::vector<Cx>& den, Cx guess,
                              int max_iter, double accept_rel) {
    return newton2d([&](Cx z) { return harmonic_f(num, den, z); }, guess, max_iter, accept_rel);
}

std::vector<Cx> zero_search(const std::vector<Cx>& num, const std::vector<Cx>& den,
                            double extent, int grid, int stride, double dedupe_rel) {
    return search2d([&](Cx z) { return harmonic_f(num, den, z); }, extent, grid, stride,
                    dedupe_rel, 60, 1e-9);
}

Cx lens_residual(const std::vector<OracleMass>& masses, double gamma, int sigma_sign, Cx source,
                 Cx z) {
    Cx deflection(0.0);
    for (const OracleMass& m : masses) {
        deflection += m.mass / (std::conj(z) - std::conj(m.position));
    }
    return z + gamma * std::conj(z) - static_cast<double>(sigma_sign) * deflection - source;
}

std::vector<Cx> lens_image_search(const std::vector<OracleMass>& masses, double gamma,
                                  int sigma_sign, Cx source, double extent, int grid, int stride,
                                  double dedupe_rel) {
    return search2d([&](Cx z) { return lens_residual(masses, gamma, sigma_sign, source, z); },
                    extent, grid, stride, dedupe_rel, 60, 1e-9);
}

Cx blob_deflection(Cx center, double total_mass, double support_radius, int profile, Cx z,
                   int radial_steps, int angular_steps) {
    // density(rho) = c          (profile 0, uniform)
    // density(rho) = c (1 - rho/R)  (profile 1, cone)
    // with c fixed by the total mass.
    const double R = support_radius;
    const double c = profile == 0
                         ? total_mass / (std::numbers::pi * R * R)
                         : 3.0 * total_mass / (std::numbers::pi * R * R);
    // Each annulus carries its exact mass (the radial integral of density * rho
    // has a closed form for both profiles); only the angular average is sampled.
    Cx acc(0.0);
    for (int a = 0; a < radial_steps; ++a) {
        const double lo = R * a / radial_steps;
        const double hi = R * (a + 1) / radial_steps;
        const double rho = 0.5 * (lo + hi);
        double ring_mass;
        if (profile == 0) {
            ring_mass = c * std::numbers::pi * (hi * hi - lo * lo);
        } else {
            ring_mass = c * 2.0 * std::numbers::pi *
                        (0.5 * (hi * hi - lo * lo) - (hi * hi * hi - lo * lo * lo) / (3.0 * R));
        }
        const double weight = ring_mass / angular_steps;
        for (int b = 0; b < angular_steps; ++b) {
            const double angle = 2.0 * std::numbers::pi * b / angular_steps;
            const Cx x = center + std::polar(rho, angle);
            acc += weight / (std::conj(z) - std::conj(x));
        }
    }
    return acc;
}

bool sets_match(const std::vector<Cx>& a, const std::vector<Cx>& b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (Cx va : a) {
        bool hit = false;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (!used[i] && std::abs(va - b[i]) <= tol * (1.0 + std::abs(va))) {
                used[i] = true;
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

}  // namespace oracle
