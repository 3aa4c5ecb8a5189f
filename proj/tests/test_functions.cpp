#include "bernint/errors.hpp"
#include "bernint/functions.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace bernint;

TEST_CASE("catalog evaluation") {
    CHECK(catalog_get("x2").eval(make_rational(1, 2)) == make_rational(1, 4));
    CHECK(catalog_get("neg-x2").eval(make_rational(1, 3)) == make_rational(-1, 9));
    CHECK(catalog_get("x2(1-x)2").deriv(1).eval(Rational(0)) == 0);
    CHECK(catalog_get("poly:1/2,0,3").eval(Rational(2)) == make_rational(25, 2));
    CHECK_THROWS_AS(catalog_get("sin"), LookupError);
    CHECK_THROWS_AS(catalog_get("poly:"), LookupError);
    CHECK(catalog_ids().size() == 6);
}

TEST_CASE("bump functions match their expansion") {
    for (int a = 2; a <= 4; ++a) {
        const auto id = "x" + std::to_string(a) + "(1-x)" + std::to_string(a);
        const auto f = catalog_get(id);
        CHECK(f.is_polynomial());
        for (long j = 0; j <= 20; ++j) {
            const auto x = make_rational(j, 20);
            CHECK(f.eval(x) == oracle::pow_q(x, a) * oracle::pow_q(Rational(1) - x, a));
        }
    }
}

TEST_CASE("truncated cube") {
    const auto f = catalog_get("trunc3");
    CHECK(f.s_max() == 2);
    CHECK(f.eval(Rational(1)) == 1);
    CHECK(f.deriv(1).eval(Rational(1)) == 6);
    CHECK(f.eval(make_rational(1, 4)) == 0);
    CHECK(f.deriv(2).eval(make_rational(1, 2)) == 0);
    // 8 (x - 1/2)^3 to the right of 1/2
    for (long j = 10; j <= 20; ++j) {
        const auto x = make_rational(j, 20);
        CHECK(f.eval(x) == 8 * oracle::pow_q(x - make_rational(1, 2), 3));
    }
    CHECK_THROWS_AS(f.deriv(3), SmoothnessError);
}

TEST_CASE("derivatives and smoothness") {
    const auto f = catalog_get("x3(1-x)3");
    CHECK(f.deriv(0).eval(make_rational(1, 3)) == f.eval(make_rational(1, 3)));
    // f'' = 6x - 36x^2 + 60x^3 - 30x^4
    const auto f2 = f.deriv(2);
    for (long j = 0; j <= 8; ++j) {
        const auto x = make_rational(j, 8);
        CHECK(f2.eval(x) == oracle::poly({0, 6, -36, 60, -30}, x));
    }
    CHECK(f.deriv(7).eval(make_rational(1, 5)) == 0);
    CHECK(f.deriv(1).id() == "x3(1-x)3^(1)");
}

TEST_CASE("monomial helpers") {
    const MonomialCoeffs p{1, 2, 3};
    CHECK(monomial_derivative(p) == MonomialCoeffs{2, 6});
    CHECK(monomial_product(MonomialCoeffs{1, 1}, MonomialCoeffs{1, -1}) == MonomialCoeffs{1, 0, -1});
    CHECK(monomial_eval(p, make_rational(1, 2)) == make_rational(11, 4));
    CHECK(monomial_trim(MonomialCoeffs{1, 0, 0}) == MonomialCoeffs{1});
}

TEST_CASE("real-valued functions") {
    const auto f = TestFunction::from_real("half", {[](const Real& x) { return x / 2; }});
    CHECK_FALSE(f.exact());
    CHECK(f.s_max() == 0);
    CHECK(to_double(f.eval_real(Real(1))) == 0.5);
    CHECK_THROWS(f.eval(Rational(1)));
}

TEST_CASE("endpoint profiles") {
    const auto x2 = endpoint_profile(catalog_get("x2"), 2);
    CHECK(x2.at0 == std::vector<Rational>{0, 0, 2});
    CHECK(x2.at1 == std::vector<Rational>{1, 2, 2});
    CHECK(x2.integral_endpoints);
    CHECK_FALSE(x2.vanishing_higher);

    const auto bump = endpoint_profile(catalog_get("x3(1-x)3"), 2);
    CHECK(bump.theorem_hypotheses());

    for (int s = 0; s <= 5; ++s) {
        const auto lin = endpoint_profile(catalog_get("poly:-1,3"), s);
        CHECK(lin.theorem_hypotheses());
        for (std::size_t i = 2; i < lin.at0.size(); ++i) CHECK(lin.at0[i] == 0);
    }
    CHECK_FALSE(endpoint_profile(catalog_get("poly:1/2"), 1).integral_endpoints);
    CHECK_THROWS_AS(endpoint_profile(catalog_get("trunc3"), 3), SmoothnessError);
}
