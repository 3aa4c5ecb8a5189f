#include "bernint/errors.hpp"
#include "bernint/integer_variants.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace bernint;

namespace {

const RoundingRule kFloor = RoundingRule::of(RoundingKind::Floor);
const RoundingRule kEven = RoundingRule::of(RoundingKind::HalfToEven);

oracle::Tie tie_of(RoundingKind kind) {
    switch (kind) {
        case RoundingKind::HalfUp: return oracle::Tie::Up;
        case RoundingKind::HalfDown: return oracle::Tie::Down;
        case RoundingKind::HalfTowardZero: return oracle::Tie::TowardZero;
        case RoundingKind::HalfAwayFromZero: return oracle::Tie::AwayFromZero;
        case RoundingKind::HalfToEven: return oracle::Tie::Even;
        default: return oracle::Tie::Odd;
    }
}

}  // namespace

TEST_CASE("tie rules on half-integers") {
    const auto r = [](RoundingKind k, long p, long q) { return round_value(make_rational(p, q), RoundingRule::of(k)); };
    CHECK(r(RoundingKind::HalfUp, 5, 2) == 3);
    CHECK(r(RoundingKind::HalfDown, 5, 2) == 2);
    CHECK(r(RoundingKind::HalfToEven, 5, 2) == 2);
    CHECK(r(RoundingKind::HalfToOdd, 5, 2) == 3);
    CHECK(r(RoundingKind::HalfTowardZero, -3, 2) == -1);
    CHECK(r(RoundingKind::HalfAwayFromZero, -3, 2) == -2);
    CHECK(r(RoundingKind::Floor, -3, 2) == -2);
    for (const auto& rule : tie_rules(3)) CHECK(round_value(make_rational(7, 3), rule) == 2);
}

TEST_CASE("deterministic rules match the oracle") {
    for (const auto& rule : tie_rules(1)) {
        if (rule.kind == RoundingKind::HalfRandom) continue;
        for (long p = -40; p <= 40; ++p)
            for (long q : {1L, 2L, 3L, 4L, 6L}) {
                const auto v = make_rational(p, q);
                CHECK(round_value(v, rule) == oracle::nearest(v, tie_of(rule.kind)));
            }
    }
}

TEST_CASE("random ties are reproducible and fair") {
    const auto rule = RoundingRule::random(42);
    long ups = 0;
    for (long k = 0; k < 2000; ++k) {
        const auto a = round_value(make_rational(5, 2), rule, StreamKey{100, k});
        CHECK(a == round_value(make_rational(5, 2), rule, StreamKey{100, k}));
        CHECK((a == 2 || a == 3));
        if (a == 3) ++ups;
        CHECK(round_value(make_rational(7, 3), rule, StreamKey{100, k}) == 2);
    }
    CHECK(ups > 900);
    CHECK(ups < 1100);
    const auto always = RoundingRule::random(42, Rational(1));
    const auto never = RoundingRule::random(42, Rational(0));
    for (long k = 0; k < 50; ++k) {
        CHECK(round_value(make_rational(-1, 2), always, StreamKey{1, k}) == 0);
        CHECK(round_value(make_rational(-1, 2), never, StreamKey{1, k}) == -1);
    }
}

TEST_CASE("rule names round trip") {
    for (const auto& rule : all_rules(9)) CHECK(parse_rule(to_string(rule)) == rule);
    CHECK(parse_rule("half-random:7:1/3") == RoundingRule::random(7, make_rational(1, 3)));
    CHECK(to_string(parse_rule("half-even")) == "half-even");
    CHECK_THROWS_AS(parse_rule("banker"), LookupError);
    CHECK(all_rules().size() == 8);
}

TEST_CASE("high-precision rounding guards ties") {
    const Real near_half = to_real(make_rational(5, 2)) + Real("1e-50");
    CHECK_THROWS_AS(round_value(near_half, kEven, tie_guard(near_half)), AmbiguousTie);
    CHECK(round_value(to_real(make_rational(12, 5)), kEven, tie_guard(Real(2))) == 2);
    const Real near_int = Real(3) - Real("1e-50");
    CHECK_THROWS_AS(round_value(near_int, kFloor, tie_guard(near_int)), AmbiguousTie);
    CHECK(round_value(to_real(make_rational(-7, 3)), kFloor, tie_guard(Real(3))) == -3);
}

TEST_CASE("integer coefficients for x^2, n = 2") {
    const auto f = catalog_get("x2");
    CHECK(coefficients(f, 2, kFloor).raw == std::vector<BigInt>{0, 0, 1});
    CHECK(coefficients(f, 2, kEven).raw == std::vector<BigInt>{0, 0, 1});
    CHECK(coefficients(f, 2, RoundingRule::of(RoundingKind::HalfUp)).raw == std::vector<BigInt>{0, 1, 1});
    CHECK(apply_integer_operator(f, 2, kFloor).to_monomial() == MonomialCoeffs{0, 0, 1});
    CHECK(coefficients(catalog_get("neg-x2"), 4, kFloor).normalized[1] == make_rational(-1, 4));
}

TEST_CASE("coefficient invariants") {
    for (const auto& id : catalog_ids()) {
        const auto f = catalog_get(id);
        for (long n : {1L, 5L, 16L, 33L}) {
            const auto row = oracle::pascal(n)[n];
            for (const auto& rule : all_rules(5)) {
                const auto c = coefficients(f, n, rule);
                REQUIRE(c.raw.size() == static_cast<std::size_t>(n + 1));
                for (long k = 0; k <= n; ++k) {
                    CHECK(c.normalized[k] * Rational(row[k]) == Rational(c.raw[k]));
                    const Rational gap = f.eval(make_rational(k, n)) - c.normalized[k];
                    if (rule.kind == RoundingKind::Floor) {
                        CHECK(gap >= 0);
                        CHECK(gap < Rational(1) / Rational(row[k]));
                    } else {
                        CHECK(abs(gap) <= Rational(1, 2) / Rational(row[k]));
                    }
                }
            }
        }
    }
}

TEST_CASE("affine functions have integer coefficients") {
    for (long p = -2; p <= 2; ++p)
        for (long q = -2; q <= 2; ++q) {
            const auto f = TestFunction::polynomial("affine", {Rational(q), Rational(p)});
            for (long n = 1; n <= 12; ++n) {
                const auto row = oracle::pascal(n)[n];
                for (const auto& rule : all_rules())
                    for (long k = 0; k <= n; ++k)
                        CHECK(Rational(coefficients(f, n, rule).raw[k]) ==
                              (Rational(q) + make_rational(p * k, n)) * Rational(row[k]));
            }
        }
}

TEST_CASE("endpoint derivatives of the integer operators") {
    for (long n = 5; n <= 40; ++n) CHECK(integer_operator_derivative(catalog_get("x2"), n, 2, kEven, 0) == 4);
    for (long n = 2; n <= 40; ++n) CHECK(integer_operator_derivative(catalog_get("neg-x2"), n, 1, kFloor, 0) == -1);
    for (const auto& rule : all_rules())
        CHECK(integer_operator_derivative(catalog_get("poly:1,-3"), 9, 1, rule, make_rational(2, 7)) == -3);
}

TEST_CASE("closed-form coefficient identities") {
    const auto r = closed_form_coefficient_check(catalog_get("x3(1-x)3"), 64, 2, kEven);
    CHECK(r.coefficients[0] == 0);
    CHECK(r.coefficients[1] == 0);
    CHECK(r.linear_part_holds);
    CHECK(r.leading_term == 0);
    CHECK_FALSE(r.mismatch);

    const auto b = closed_form_coefficient_check(catalog_get("x2(1-x)2"), 32, 1, kEven);
    CHECK(b.coefficients[0] == 0);
    CHECK(b.linear_part_holds);

    const auto lin = closed_form_coefficient_check(catalog_get("poly:2,-1"), 10, 3, kFloor);
    CHECK(lin.linear_part_holds);
    CHECK(lin.r_s == 0);

    CHECK_THROWS_AS(closed_form_coefficient_check(catalog_get("x2"), 16, 2, kEven), PreconditionError);
}

TEST_CASE("rounding lemma") {
    CHECK(lemma_lm_check(make_rational(5, 2), 2, make_rational(1, 2), RoundingRule::of(RoundingKind::HalfUp)));
    CHECK(lemma_lm_check(Rational(4), 4, Rational(0), kEven));
    CHECK_THROWS_AS(lemma_lm_check(Rational(4), 4, Rational(0), kFloor), DomainError);
    CHECK_THROWS_AS(lemma_lm_check(Rational(5), 4, make_rational(1, 2), kEven), DomainError);
}
