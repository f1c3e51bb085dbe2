#include "harmlens/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "harmlens/errors.hpp"

namespace harmlens {

Polynomial::Polynomial(std::vector<Cx> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

Polynomial::Polynomial(std::initializer_list<Cx> coeffs) : coeffs_(coeffs) {
    normalize();
}

void Polynomial::normalize() {
    double peak = 0.0;
    for (const Cx& c : coeffs_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw InvalidInputError("polynomial has non-finite coefficients");
        }
        peak = std::max(peak, std::abs(c));
    }
    if (peak == 0.0) {
        coeffs_.clear();
        return;
    }
    while (!coeffs_.empty() && std::abs(coeffs_.back()) <= kTrimRel * peak) {
        coeffs_.pop_back();
    }
}

Polynomial Polynomial::constant(Cx c) {
    return Polynomial(std::vector<Cx>{c});
}

Polynomial Polynomial::identity() {
    return Polynomial{Cx(0.0), Cx(1.0)};
}

Polynomial Polynomial::monomial(int k, Cx c) {
    std::vector<Cx> coeffs(static_cast<std::size_t>(k) + 1, Cx(0.0));
    coeffs.back() = c;
    return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::from_roots(std::span<const Cx> roots, Cx leading) {
    Polynomial p = constant(leading);
    for (const Cx& root : roots) {
        p = p * Polynomial{-root, Cx(1.0)};
    }
    return p;
}

Cx Polynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Cx(0.0);
    return coeffs_[static_cast<std::size_t>(k)];
}

Cx Polynomial::leading() const {
    return coeffs_.empty() ? Cx(0.0) : coeffs_.back();
}

double Polynomial::max_coeff_abs() const {
    double peak = 0.0;
    for (const Cx& c : coeffs_) peak = std::max(peak, std::abs(c));
    return peak;
}

Cx Polynomial::eval(Cx z) const {
    Cx acc(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<Cx> out(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        out[k - 1] = static_cast<double>(k) * coeffs_[k];
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::conj_coeffs() const {
    std::vector<Cx> out(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] = std::conj(coeffs_[k]);
    return Polynomial(std::move(out));
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
    if (is_zero()) return Polynomial();
    // Horner in polynomial arithmetic.
    Polynomial acc = constant(coeffs_.back());
    for (auto it = std::next(coeffs_.rbegin()); it != coeffs_.rend(); ++it) {
        acc = acc * inner + constant(*it);
    }
    return acc;
}

Polynomial Polynomial::operator-() const {
    std::vector<Cx> out(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] = -coeffs_[k];
    return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Cx(0.0));
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    normalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Cx(0.0));
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    normalize();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Cx> out(a.coeffs_.size() + b.coeffs_.size() - 1, Cx(0.0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return Polynomial(std::move(out));
}

Polynomial operator*(Cx s, const Polynomial& p) {
    std::vector<Cx> out(p.coeffs_.size());
    for (std::size_t k = 0; k < p.coeffs_.size(); ++k) out[k] = s * p.coeffs_[k];
    return Polynomial(std::move(out));
}

}  // namespace harmlens
