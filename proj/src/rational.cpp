#include "harmlens/rational.hpp"

#include <algorithm>
#include <cmath>

#include "harmlens/errors.hpp"

namespace harmlens {

namespace {

Cx powi(Cx z, int k) {
    if (k < 0) return Cx(1.0) / powi(z, -k);
    Cx acc(1.0);
    Cx base = z;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

// p(z) = z^deg * rev(1/z) where rev runs Horner over reversed coefficients.
Cx eval_reversed(const Polynomial& p, Cx w) {
    const std::vector<Cx>& c = p.coeffs();
    Cx acc(0.0);
    for (const Cx& ck : c) acc = acc * w + ck;
    return acc;
}

}  // namespace

bool is_finite(Cx v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

Cx complex_infinity() {
    const double inf = std::numeric_limits<double>::infinity();
    return Cx(inf, inf);
}

Rational::Rational(Polynomial num, Polynomial den, double coprime_tol)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw InvalidInputError("denominator is identically zero");
    if (num_.is_zero()) {
        reduced_ = den_.degree() == 0;
        return;
    }
    if (num_.degree() == 0 || den_.degree() == 0) {
        reduced_ = true;
        return;
    }
    if (!coprimality_check(num_, den_, coprime_tol)) {
        throw InvalidInputError("numerator and denominator share a root; reduce before constructing");
    }
    reduced_ = true;
}

Rational Rational::unreduced(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw InvalidInputError("denominator is identically zero");
    Rational r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.reduced_ = false;
    return r;
}

int Rational::degree() const {
    if (num_.is_zero()) return den_.degree();
    return std::max(num_.degree(), den_.degree());
}

Cx Rational::eval(Cx z) const {
    const double den_peak = den_.max_coeff_abs();
    if (num_.is_zero()) {
        const Cx dv = std::abs(z) > 1.0 ? eval_reversed(den_, Cx(1.0) / z) : den_.eval(z);
        if (std::abs(dv) <= kNearPoleRel * den_peak) return complex_infinity();
        return Cx(0.0);
    }
    if (std::abs(z) <= 1.0) {
        const Cx dv = den_.eval(z);
        if (std::abs(dv) <= kNearPoleRel * den_peak) return complex_infinity();
        return num_.eval(z) / dv;
    }
    // Reciprocal chart: num(z) = z^dn * n~(1/z), den(z) = z^dd * d~(1/z).
    const Cx w = Cx(1.0) / z;
    const Cx nv = eval_reversed(num_, w);
    const Cx dv = eval_reversed(den_, w);
    if (std::abs(dv) <= kNearPoleRel * den_peak) return complex_infinity();
    const Cx ratio = nv / dv;
    const Cx scale = powi(z, num_.degree() - den_.degree());
    const Cx v = ratio * scale;
    if (!is_finite(v)) return complex_infinity();
    return v;
}

Rational Rational::derivative() const {
    Polynomial n = num_.derivative() * den_ - num_ * den_.derivative();
    return unreduced(std::move(n), den_ * den_);
}

Rational Rational::reflect() const {
    Rational r;
    r.num_ = num_.conj_coeffs();
    r.den_ = den_.conj_coeffs();
    r.reduced_ = reduced_;
    return r;
}

Rational Rational::compose(const Rational& inner) const {
    if (num_.is_zero()) return unreduced(Polynomial(), Polynomial::constant(Cx(1.0)));
    const int d = std::max(num_.degree(), den_.degree());
    const Polynomial& p = inner.num_;
    const Polynomial& q = inner.den_;

    std::vector<Polynomial> p_pow(static_cast<std::size_t>(d) + 1);
    std::vector<Polynomial> q_pow(static_cast<std::size_t>(d) + 1);
    p_pow[0] = Polynomial::constant(Cx(1.0));
    q_pow[0] = Polynomial::constant(Cx(1.0));
    for (int k = 1; k <= d; ++k) {
        p_pow[static_cast<std::size_t>(k)] = p_pow[static_cast<std::size_t>(k - 1)] * p;
        q_pow[static_cast<std::size_t>(k)] = q_pow[static_cast<std::size_t>(k - 1)] * q;
    }

    // Homogenize both parts at degree d so A(p/q)/B(p/q) shares one q^d factor.
    Polynomial rn, rd;
    for (int k = 0; k <= d; ++k) {
        const Polynomial basis =
            p_pow[static_cast<std::size_t>(k)] * q_pow[static_cast<std::size_t>(d - k)];
        const Cx ak = num_.coeff(k);
        const Cx bk = den_.coeff(k);
        if (ak != Cx(0.0)) rn += ak * basis;
        if (bk != Cx(0.0)) rd += bk * basis;
    }
    return unreduced(std::move(rn), std::move(rd));
}

std::vector<Pole> Rational::poles(const RootOptions& opts) const {
    if (!reduced_) throw InvalidInputError("poles requires a reduced rational function");
    if (den_.degree() < 1) return {};
    RootOptions o = opts;
    o.cluster_rel = 1e-7;
    const RootSet rs = find_roots(den_, o);
    std::vector<Pole> out;
    out.reserve(rs.roots.size());
    for (const RootRecord& r : rs.roots) out.push_back(Pole{r.location, r.multiplicity});
    return out;
}

}  // namespace harmlens
