#pragma once

#include <vector>

#include "harmlens/polynomial.hpp"
#include "harmlens/roots.hpp"

namespace harmlens {

struct Pole {
    Cx location;
    int multiplicity = 1;
};

bool is_finite(Cx v);
Cx complex_infinity();

/// Rational function num/den with a nonzero denominator.
///
/// "Reduced" means the pair passed the numeric coprimality check when the
/// instance was built. Derivatives and compositions are carried unreduced on
/// purpose: no approximate cancellation is ever attempted, downstream
/// residual filters discard whatever removable factors produce.
class Rational {
public:
    /// Evaluation flags a pole once |den(z)| drops below
    /// kNearPoleRel * max|den coeff| * max(1,|z|)^deg(den).
    static constexpr double kNearPoleRel = 1e-11;

    Rational(Polynomial num, Polynomial den, double coprime_tol = 1e-8);
    static Rational unreduced(Polynomial num, Polynomial den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_reduced() const { return reduced_; }

    /// max(deg num, deg den); the zero numerator contributes nothing.
    int degree() const;

    /// Pole-aware evaluation. Near-singular denominators yield complex
    /// infinity instead of a silently huge finite value, and |z| > 1 is
    /// evaluated through the reciprocal chart so large arguments cannot
    /// overflow into NaN.
    Cx eval(Cx z) const;

    Rational derivative() const;                    // unreduced
    Rational reflect() const;                       // conjugate all coefficients
    Rational compose(const Rational& inner) const;  // unreduced, homogenized

    /// Clustered roots of the denominator. Requires a reduced instance.
    std::vector<Pole> poles(const RootOptions& opts = {}) const;

private:
    Rational() = default;

    Polynomial num_;
    Polynomial den_;
    bool reduced_ = false;
};

}  // namespace harmlens
