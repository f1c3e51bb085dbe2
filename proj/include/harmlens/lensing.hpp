#pragma once

#include <optional>
#include <span>
#include <vector>

#include "harmlens/solver.hpp"

namespace harmlens {

struct PointMass {
    double mass = 1.0;
    Cx position;
};

/// Point-mass deflector configuration for
///   w = z + gamma * conj(z) - sign(sigma) * sum_j m_j / (conj(z) - conj(z_j)).
struct LensConfig {
    double gamma = 0.0;
    int sigma_sign = +1;
    std::vector<PointMass> masses;

    int n() const { return static_cast<int>(masses.size()); }
};

/// Radially symmetric extended deflector supported on a disk.
struct RadialBlob {
    Cx center;
    double mass = 1.0;
    double support_radius = 0.1;
};

struct ImageSet {
    std::vector<HarmonicZero> images;
    Cx source;
    int n = 0;
    int bound = 0;  // 5n - 5 without shear, 5n with shear
    std::optional<bool> parity_ok;
    bool source_on_caustic = false;
    SolveReport report;
};

/// The equivalent conjugated-rational-function form: images of w are the
/// zeros of conj(r(z)) - z with
///   r(z) = conj(w) - gamma * z + sign(sigma) * sum_j m_j / (z - z_j).
/// Throws CoincidentMassesError for repeated positions and InvalidInputError
/// for nonpositive masses.
Rational lens_to_rational(const LensConfig& config, Cx source);

/// Residual of the source-plane equation at z (zero exactly at images).
Cx lens_equation_residual(const LensConfig& config, Cx source, Cx z);

/// Images of the source through solve_zeros. Singular zeros mark the source
/// as (numerically) on a caustic; that is a flagged result, not a failure.
ImageSet find_images(const LensConfig& config, Cx source, const SolveOptions& opts = {});

/// Shear-free parity law: image count has parity opposite to n and satisfies
/// count = 1 + 2 * n_minus - n. Throws NotApplicableError with shear or when
/// the solve is singular.
bool parity_check(const ImageSet& images);

/// n equal masses 1/n on a regular polygon of circumradius rho.
LensConfig polygon_lens(int n, double rho = 1.0, int sigma_sign = +1);

struct ExtendedReduction {
    LensConfig config;
    std::vector<RadialBlob> exclusions;
};

/// Outside every support disk the extended deflectors act exactly like point
/// masses at their centers; the disks themselves become exclusion regions.
ExtendedReduction reduce_extended(std::span<const RadialBlob> blobs, double gamma,
                                  int sigma_sign);

struct ExtendedImageSet {
    ImageSet point_images;
    std::vector<HarmonicZero> outside;
    std::vector<HarmonicZero> inside_support;
    std::vector<RadialBlob> exclusions;
    int bound = 0;  // applies to outside.size() only
};

ExtendedImageSet find_images_extended(std::span<const RadialBlob> blobs, double gamma,
                                      int sigma_sign, Cx source,
                                      const SolveOptions& opts = {});

}  // namespace harmlens
