#include <cmath>
#include <vector>

#include <doctest.h>

#include "harmlens/errors.hpp"
#include "harmlens/polynomial.hpp"
#include "oracles.hpp"
#include "test_rng.hpp"

using harmlens::Cx;
using harmlens::Polynomial;

namespace {

// Power-basis evaluation, a different algorithm than the library's Horner.
Cx power_sum_eval(const std::vector<Cx>& coeffs, Cx z) {
    Cx acc(0.0);
    Cx zk(1.0);
    for (Cx c : coeffs) {
        acc += c * zk;
        zk *= z;
    }
    return acc;
}

Polynomial random_poly(testutil::Rng& rng, int degree) {
    std::vector<Cx> coeffs(static_cast<std::size_t>(degree) + 1);
    for (Cx& c : coeffs) c = rng.box(1.0);
    coeffs.back() = rng.ring(0.3, 1.5);
    return Polynomial(std::move(coeffs));
}

}  // namespace

TEST_CASE("zero polynomial and trimming") {
    CHECK(Polynomial{}.is_zero());
    CHECK(Polynomial{}.degree() == Polynomial::kZeroDegree);
    CHECK(Polynomial{Cx(0.0), Cx(0.0)}.is_zero());

    const Polynomial trimmed{Cx(1.0), Cx(1e-20)};
    CHECK(trimmed.degree() == 0);
    CHECK(trimmed.coeff(0) == Cx(1.0));

    const Polynomial kept{Cx(1.0), Cx(1e-10)};
    CHECK(kept.degree() == 1);

    CHECK(Polynomial{}.leading() == Cx(0.0));
    CHECK(Polynomial{Cx(2.0), Cx(3.0)}.coeff(7) == Cx(0.0));
    CHECK(Polynomial{Cx(2.0), Cx(3.0)}.coeff(-1) == Cx(0.0));

    const double nan = std::nan("");
    CHECK_THROWS_AS(Polynomial{Cx(nan)}, harmlens::InvalidInputError);
}

TEST_CASE("factories evaluate correctly") {
    CHECK(Polynomial::constant(Cx(3.0, -1.0)).eval(Cx(9.0)) == Cx(3.0, -1.0));
    CHECK(Polynomial::identity().eval(Cx(2.0, 1.0)) == Cx(2.0, 1.0));

    const Polynomial mono = Polynomial::monomial(3, Cx(0.0, 2.0));
    const Cx z(1.5, -0.5);
    CHECK(std::abs(mono.eval(z) - Cx(0.0, 2.0) * z * z * z) < 1e-12);

    const std::vector<Cx> roots = {Cx(1.0), Cx(-2.0, 1.0), Cx(0.5, 0.5)};
    const Polynomial p = Polynomial::from_roots(roots, Cx(2.0));
    CHECK(p.degree() == 3);
    CHECK(std::abs(p.leading() - Cx(2.0)) < 1e-12);
    for (Cx root : roots) CHECK(std::abs(p.eval(root)) < 1e-12);
}

TEST_CASE("evaluation matches the power-basis sum") {
    testutil::Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const int degree = 1 + static_cast<int>(rng.next() % 8);
        const Polynomial p = random_poly(rng, degree);
        const Cx z = rng.box(2.0);
        const Cx direct = power_sum_eval(p.coeffs(), z);
        CHECK(std::abs(p.eval(z) - direct) <= 1e-11 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("derivative matches central finite differences") {
    testutil::Rng rng(202);
    for (int trial = 0; trial < 100; ++trial) {
        const int degree = 1 + static_cast<int>(rng.next() % 6);
        const Polynomial p = random_poly(rng, degree);
        const Polynomial dp = p.derivative();
        const Cx z = rng.box(2.0);
        const double h = 1e-6;
        const Cx fd = (p.eval(z + h) - p.eval(z - h)) / (2.0 * h);
        CHECK(std::abs(dp.eval(z) - fd) <= 1e-6 * (1.0 + std::abs(fd)));
    }
    CHECK(Polynomial::constant(Cx(4.0)).derivative().is_zero());
    CHECK(Polynomial{}.derivative().is_zero());
}

TEST_CASE("coefficient conjugation identity") {
    testutil::Rng rng(303);
    for (int trial = 0; trial < 100; ++trial) {
        const Polynomial p = random_poly(rng, 1 + static_cast<int>(rng.next() % 6));
        const Cx z = rng.box(2.0);
        const Cx lhs = std::conj(p.eval(std::conj(z)));
        const Cx rhs = p.conj_coeffs().eval(z);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("composition evaluates pointwise") {
    testutil::Rng rng(404);
    for (int trial = 0; trial < 60; ++trial) {
        const Polynomial outer = random_poly(rng, 1 + static_cast<int>(rng.next() % 4));
        const Polynomial inner = random_poly(rng, 1 + static_cast<int>(rng.next() % 4));
        const Polynomial composed = outer.compose(inner);
        CHECK(composed.degree() == outer.degree() * inner.degree());
        for (int k = 0; k < 5; ++k) {
            const Cx z = rng.box(1.2);
            const Cx expected = outer.eval(inner.eval(z));
            CHECK(std::abs(composed.eval(z) - expected) <= 1e-9 * (1.0 + std::abs(expected)));
        }
    }
}

TEST_CASE("arithmetic degree identities hold across random pairs") {
    testutil::Rng rng(505);
    for (int trial = 0; trial < 1000; ++trial) {
        const int da = static_cast<int>(rng.next() % 9);
        const int db = static_cast<int>(rng.next() % 9);
        const Polynomial a = random_poly(rng, da);
        const Polynomial b = random_poly(rng, db);

        CHECK((a * b).degree() == da + db);
        CHECK((a + b).degree() <= std::max(da, db));
        CHECK((a - a).is_zero());

        const Polynomial back = (a - b) + b;
        CHECK(back.degree() == a.degree());
        for (int k = 0; k <= a.degree(); ++k) {
            CHECK(std::abs(back.coeff(k) - a.coeff(k)) < 1e-12);
        }
    }
}

TEST_CASE("scalar multiplication scales evaluations") {
    testutil::Rng rng(606);
    const Polynomial p = random_poly(rng, 5);
    const Cx s(0.0, -2.5);
    const Cx z = rng.box(1.5);
    CHECK(std::abs((s * p).eval(z) - s * p.eval(z)) < 1e-12);
    CHECK(std::abs((p * s).eval(z) - s * p.eval(z)) < 1e-12);
    CHECK((0.0 * p).is_zero());
    CHECK(std::abs((-p).eval(z) + p.eval(z)) < 1e-15);
}

TEST_CASE("multiplying by zero and adding zero behave") {
    const Polynomial p{Cx(1.0), Cx(2.0), Cx(3.0)};
    const Polynomial zero;
    CHECK((p * zero).is_zero());
    CHECK((zero * p).is_zero());
    CHECK((p + zero).degree() == 2);
    CHECK((zero + p).degree() == 2);
    CHECK(zero.eval(Cx(5.0)) == Cx(0.0));
}

TEST_CASE("coprimality check distinguishes shared roots") {
    const Polynomial a = Polynomial::from_roots(std::vector<Cx>{Cx(1.0), Cx(2.0)});
    const Polynomial b = Polynomial::from_roots(std::vector<Cx>{Cx(3.0)});
    const Polynomial c = Polynomial::from_roots(std::vector<Cx>{Cx(2.0), Cx(5.0)});
    CHECK(harmlens::coprimality_check(a, b));
    CHECK_FALSE(harmlens::coprimality_check(a, c));

    CHECK(harmlens::coprimality_check(Polynomial::constant(Cx(4.0)), a));
    CHECK(harmlens::coprimality_check(a, Polynomial::constant(Cx(4.0))));
    CHECK(harmlens::coprimality_check(Polynomial{}, Polynomial::constant(Cx(1.0))));
    CHECK_FALSE(harmlens::coprimality_check(Polynomial{}, a));
}
