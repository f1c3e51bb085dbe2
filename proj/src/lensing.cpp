#include "harmlens/lensing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "harmlens/errors.hpp"

namespace harmlens {

namespace {

void validate(const LensConfig& config) {
    if (config.sigma_sign != 1 && config.sigma_sign != -1) {
        throw InvalidInputError("sigma_sign must be +1 or -1");
    }
    if (config.masses.empty()) throw InvalidInputError("lens needs at least one mass");
    for (const PointMass& m : config.masses) {
        if (!(m.mass > 0.0)) throw InvalidInputError("point masses must be positive");
    }
    for (std::size_t i = 0; i < config.masses.size(); ++i) {
        for (std::size_t j = i + 1; j < config.masses.size(); ++j) {
            const Cx a = config.masses[i].position;
            const Cx b = config.masses[j].position;
            if (std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a))) {
                throw CoincidentMassesError("two point masses share a position");
            }
        }
    }
}

}  // namespace

Rational lens_to_rational(const LensConfig& config, Cx source) {
    validate(config);
    const double s = static_cast<double>(config.sigma_sign);

    std::vector<Cx> positions;
    positions.reserve(config.masses.size());
    for (const PointMass& m : config.masses) positions.push_back(m.position);
    const Polynomial den = Polynomial::from_roots(positions);

    // (conj(w) - gamma z) * den + s * sum_j m_j * prod_{k != j} (z - z_k)
    Polynomial num = Polynomial{std::conj(source), Cx(-config.gamma)} * den;
    for (std::size_t j = 0; j < config.masses.size(); ++j) {
        std::vector<Cx> others;
        others.reserve(positions.size() - 1);
        for (std::size_t k = 0; k < positions.size(); ++k) {
            if (k != j) others.push_back(positions[k]);
        }
        num += (s * config.masses[j].mass) * Polynomial::from_roots(others);
    }
    return Rational(std::move(num), den);
}

Cx lens_equation_residual(const LensConfig& config, Cx source, Cx z) {
    const double s = static_cast<double>(config.sigma_sign);
    Cx deflection(0.0);
    for (const PointMass& m : config.masses) {
        const Cx d = std::conj(z) - std::conj(m.position);
        if (d == Cx(0.0)) return complex_infinity();
        deflection += m.mass / d;
    }
    return z + config.gamma * std::conj(z) - s * deflection - source;
}

ImageSet find_images(const LensConfig& config, Cx source, const SolveOptions& opts) {
    const Rational r = lens_to_rational(config, source);

    // Perturbing r would silently move the source, so images are always
    // solved for the requested configuration; caustic proximity is flagged.
    SolveOptions lens_opts = opts;
    lens_opts.perturb = false;
    ImageSet set;
    set.report = solve_zeros(r, lens_opts);
    set.images = set.report.zeros;
    set.source = source;
    set.n = config.n();
    set.bound = config.gamma == 0.0 ? 5 * set.n - 5 : 5 * set.n;
    set.source_on_caustic = set.report.has_singular();
    if (config.gamma == 0.0 && !set.source_on_caustic) {
        const int count = static_cast<int>(set.images.size());
        const bool parity = (count % 2) == ((set.n + 1) % 2);
        const bool ledger = count == 1 + 2 * set.report.n_minus - set.n;
        set.parity_ok = parity && ledger;
    }
    return set;
}

bool parity_check(const ImageSet& images) {
    if (!images.parity_ok.has_value()) {
        throw NotApplicableError(
            "parity law applies only to shear-free, non-caustic configurations");
    }
    return *images.parity_ok;
}

LensConfig polygon_lens(int n, double rho, int sigma_sign) {
    if (n < 1) throw InvalidInputError("polygon lens needs n >= 1");
    if (!(rho > 0.0)) throw InvalidInputError("polygon radius must be positive");
    LensConfig config;
    config.sigma_sign = sigma_sign;
    config.masses.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / n;
        config.masses.push_back(PointMass{1.0 / n, std::polar(rho, angle)});
    }
    return config;
}

ExtendedReduction reduce_extended(std::span<const RadialBlob> blobs, double gamma,
                                  int sigma_sign) {
    if (blobs.empty()) throw InvalidInputError("extended reduction needs at least one blob");
    ExtendedReduction reduction;
    reduction.config.gamma = gamma;
    reduction.config.sigma_sign = sigma_sign;
    for (const RadialBlob& b : blobs) {
        if (!(b.mass > 0.0)) throw InvalidInputError("blob mass must be positive");
        if (!(b.support_radius > 0.0)) throw InvalidInputError("blob support radius must be positive");
        reduction.config.masses.push_back(PointMass{b.mass, b.center});
        reduction.exclusions.push_back(b);
    }
    validate(reduction.config);
    return reduction;
}

ExtendedImageSet find_images_extended(std::span<const RadialBlob> blobs, double gamma,
                                      int sigma_sign, Cx source, const SolveOptions& opts) {
    const ExtendedReduction reduction = reduce_extended(blobs, gamma, sigma_sign);
    ExtendedImageSet out;
    out.point_images = find_images(reduction.config, source, opts);
    out.exclusions = reduction.exclusions;
    out.bound = out.point_images.bound;
    for (const HarmonicZero& image : out.point_images.images) {
        const bool outside = std::ranges::all_of(reduction.exclusions, [&](const RadialBlob& b) {
            return std::abs(image.location - b.center) > b.support_radius;
        });
        if (outside) out.outside.push_back(image);
        else out.inside_support.push_back(image);
    }
    return out;
}

}  // namespace harmlens
