#pragma once

#include <complex>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace harmlens {

using Cx = std::complex<double>;

/// Dense polynomial with complex coefficients stored in ascending order,
/// so coeffs()[k] multiplies z^k.
///
/// The zero polynomial is represented by an empty coefficient list and the
/// distinguished degree sentinel kZeroDegree; that value never participates
/// in degree arithmetic, callers branch on is_zero() first.
class Polynomial {
public:
    static constexpr int kZeroDegree = std::numeric_limits<int>::min();
    /// Trailing coefficients below kTrimRel * max|coeff| are dropped on
    /// construction and after every arithmetic operation (idempotent).
    static constexpr double kTrimRel = 1e-13;

    Polynomial() = default;
    explicit Polynomial(std::vector<Cx> coeffs);
    Polynomial(std::initializer_list<Cx> coeffs);

    static Polynomial constant(Cx c);
    static Polynomial identity();  // the polynomial z
    static Polynomial monomial(int k, Cx c = Cx(1.0));
    static Polynomial from_roots(std::span<const Cx> roots, Cx leading = Cx(1.0));

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const {
        return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1;
    }
    const std::vector<Cx>& coeffs() const { return coeffs_; }
    Cx coeff(int k) const;  // zero outside the stored range
    Cx leading() const;     // zero for the zero polynomial
    double max_coeff_abs() const;

    Cx eval(Cx z) const;  // Horner

    Polynomial derivative() const;
    Polynomial conj_coeffs() const;
    /// Polynomial composition this(inner(z)).
    Polynomial compose(const Polynomial& inner) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) {
        a += b;
        return a;
    }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) {
        a -= b;
        return a;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Cx s, const Polynomial& p);
    friend Polynomial operator*(const Polynomial& p, Cx s) { return s * p; }

private:
    void normalize();

    std::vector<Cx> coeffs_;
};

/// Numeric coprimality test: true iff no root of q (located numerically)
/// lies within tol of a root of p. Constants are coprime to everything;
/// the zero polynomial is coprime only to constants.
bool coprimality_check(const Polynomial& p, const Polynomial& q, double tol = 1e-8);

}  // namespace harmlens
