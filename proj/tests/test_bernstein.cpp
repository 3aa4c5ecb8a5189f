#include "bernint/bernstein.hpp"
#include "bernint/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace bernint;

TEST_CASE("basis evaluation") {
    CHECK(basis_eval(2, 1, make_rational(1, 2)) == make_rational(1, 2));
    for (long k = 0; k <= 6; ++k) CHECK(basis_eval(6, k, Rational(0)) == (k == 0 ? 1 : 0));
    Rational sum = 0;
    for (long k = 0; k <= 5; ++k) sum += basis_eval(5, k, make_rational(1, 3));
    CHECK(sum == 1);
    for (long n = 1; n <= 12; ++n)
        for (long k = 0; k <= n; ++k) {
            const auto x = make_rational(2, 7);
            CHECK(basis_eval(n, k, x) ==
                  Rational(oracle::choose(n, k)) * oracle::pow_q(x, k) * oracle::pow_q(1 - x, n - k));
        }
    CHECK_THROWS_AS(basis_eval(3, 1, make_rational(3, 2)), DomainError);
}

TEST_CASE("apply B_n") {
    const auto p = apply_bn(catalog_get("x2"), 2);
    CHECK(p.degree() == 2);
    CHECK(p(make_rational(1, 2)) == make_rational(3, 8));
    CHECK(p.to_monomial() == MonomialCoeffs{0, make_rational(1, 2), make_rational(1, 2)});

    for (long n = 1; n <= 10; ++n) {
        CHECK(apply_bn(catalog_get("poly:1"), n).to_monomial() == MonomialCoeffs{1});
        CHECK(apply_bn(catalog_get("poly:-2,3/5"), n).to_monomial() == MonomialCoeffs{-2, make_rational(3, 5)});
    }
    // against direct summation
    const auto f = catalog_get("x3(1-x)3");
    for (long n : {3L, 9L, 17L}) {
        const auto bn = apply_bn(f, n);
        std::vector<Rational> c;
        for (long k = 0; k <= n; ++k) c.push_back(f.eval(make_rational(k, n)));
        for (long j = 0; j <= 10; ++j) CHECK(bn(make_rational(j, 10)) == oracle::bernstein_sum(c, make_rational(j, 10)));
    }
}

TEST_CASE("endpoint values") {
    const BernsteinPoly p({make_rational(1, 3), 5, make_rational(-2, 7)}, BasisForm::Normalized);
    CHECK(p(Rational(0)) == make_rational(1, 3));
    CHECK(p(Rational(1)) == make_rational(-2, 7));
    CHECK(to_double(p(Real(1))) == doctest::Approx(-2.0 / 7.0));
}

TEST_CASE("forms round trip") {
    const BernsteinPoly p({1, 2, 3, 4}, BasisForm::Raw);
    const auto q = p.to_form(BasisForm::Normalized);
    CHECK(q.coeffs() == std::vector<Rational>{1, make_rational(2, 3), 1, 4});
    CHECK(q.to_form(BasisForm::Raw).coeffs() == p.coeffs());
    CHECK(p == q);
}

TEST_CASE("forward differences") {
    const std::vector<Rational> v{0, make_rational(1, 4), 1};
    CHECK(forward_diff(v, 2) == std::vector<Rational>{make_rational(1, 2)});
    CHECK(forward_diff(std::vector<Rational>{3, 5}, 1) == std::vector<Rational>{2});
    CHECK(forward_diff(std::vector<Rational>{1, 3, 5, 7, 9}, 2) == std::vector<Rational>{0, 0, 0});
    CHECK(forward_diff(v, 0) == v);
    CHECK_THROWS_AS(forward_diff(v, 3), DomainError);

    std::vector<Rational> c;
    for (long k = 0; k <= 12; ++k) c.push_back(make_rational(k * k * k - 3 * k, 7 + k));
    for (long s = 0; s <= 5; ++s) {
        const auto d = forward_diff(c, static_cast<int>(s));
        for (long k = 0; k + s <= 12; ++k) CHECK(d[k] == oracle::forward_difference(c, k, s));
    }
}

TEST_CASE("derivatives of B_n") {
    CHECK(bn_derivative(catalog_get("x2"), 2, 1, make_rational(1, 4)) == make_rational(3, 4));
    for (long n = 1; n <= 8; ++n)
        for (long j = 0; j <= 4; ++j) CHECK(bn_derivative(catalog_get("poly:4,-5/2"), n, 1, make_rational(j, 4)) == make_rational(-5, 2));
    const auto f = catalog_get("x2(1-x)2");
    CHECK(bn_derivative(f, 7, 0, make_rational(1, 3)) == apply_bn(f, 7)(make_rational(1, 3)));
    CHECK_THROWS_AS(bn_derivative(f, 2, 3, Rational(0)), DegreeError);
}

TEST_CASE("symbolic derivative agrees with monomial differentiation") {
    const auto p = apply_bn(catalog_get("x2"), 2);
    const auto d = symbolic_derivative(p, 1);
    CHECK(d.degree() == 1);
    CHECK(d(Rational(0)) == make_rational(1, 2));
    CHECK(d(Rational(1)) == make_rational(3, 2));
    CHECK(symbolic_derivative(p, 3) == BernsteinPoly::zero());
    CHECK(symbolic_derivative(BernsteinPoly({5}, BasisForm::Raw), 1) == BernsteinPoly::zero());

    const auto q = apply_bn(catalog_get("x4(1-x)4"), 11);
    auto mono = q.to_monomial();
    for (int s = 1; s <= 4; ++s) {
        mono = monomial_derivative(mono);
        const auto ds = symbolic_derivative(q, s);
        const auto dd = derivative_from_differences(q.coeffs(), s);
        for (long j = 0; j <= 16; ++j) {
            const auto x = make_rational(j, 16);
            CHECK(ds(x) == monomial_eval(mono, x));
            CHECK(dd(x) == monomial_eval(mono, x));
        }
    }
}

TEST_CASE("grid evaluator is exact") {
    const auto p = apply_bn(catalog_get("x3(1-x)3"), 13);
    const GridEvaluator grid(p, 40);
    for (unsigned long j = 0; j <= 40; ++j) CHECK(grid.value(j) == p(make_rational(static_cast<long>(j), 40)));
    CHECK_THROWS_AS(grid.numerator(41), DomainError);
}
