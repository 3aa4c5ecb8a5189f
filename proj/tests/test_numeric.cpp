#include "bernint/errors.hpp"
#include "bernint/numeric.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace bernint;

TEST_CASE("rationals stay canonical") {
    const auto r = make_rational(6, -4);
    CHECK(r.get_num() == -3);
    CHECK(r.get_den() == 2);
    const Rational sum = make_rational(1, 6) + make_rational(1, 3);
    CHECK(sum == make_rational(1, 2));
    CHECK(sum.get_den() == 2);
    CHECK_THROWS_AS(make_rational(1, 0), DomainError);
}

TEST_CASE("parse and print rationals") {
    CHECK(parse_rational("5/2") == make_rational(5, 2));
    CHECK(parse_rational("-3/2") == make_rational(-3, 2));
    CHECK(parse_rational("+4/8") == make_rational(1, 2));
    CHECK(parse_rational("0.125") == make_rational(1, 8));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("010/08") == make_rational(5, 4));
    CHECK(parse_rational("0.0625") == make_rational(1, 16));
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational("abc"), LookupError);
    CHECK_THROWS_AS(parse_rational(""), LookupError);
    CHECK(to_string(make_rational(-6, 4)) == "-3/2");
    CHECK(to_string(Rational(7)) == "7");
}

TEST_CASE("binomial coefficients") {
    CHECK(binomial(5, 2) == 10);
    for (long n = 0; n < 10; ++n) CHECK(binomial(n, 0) == 1);
    CHECK_THROWS_AS(binomial(3, 4), DomainError);
    CHECK_THROWS_AS(binomial(-1, 0), DomainError);

    const auto pascal = oracle::pascal(200);
    const auto big = binomial(200, 100);
    CHECK(big == pascal[200][100]);
    CHECK(big.get_str().size() == 59);
    for (long n = 0; n <= 200; n += 7) {
        const auto row = binomial_row(n);
        REQUIRE(row.size() == static_cast<std::size_t>(n + 1));
        for (long k = 0; k <= n; ++k) CHECK(row[k] == pascal[n][k]);
    }
}

TEST_CASE("factorials and powers") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(falling_factorial(10, 3) == 720);
    CHECK(falling_factorial(5, 0) == 1);
    CHECK(pow(BigInt(2), 64).get_str() == "18446744073709551616");
    CHECK(pow(make_rational(-2, 3), 3) == make_rational(-8, 27));
}

TEST_CASE("floor, ceil and integrality") {
    CHECK(floor_int(make_rational(27, 10)) == 2);
    CHECK(floor_int(make_rational(-3, 2)) == -2);
    CHECK(floor_int(Rational(7)) == 7);
    CHECK(ceil_int(make_rational(-3, 2)) == -1);
    CHECK(ceil_int(make_rational(27, 10)) == 3);
    CHECK(is_integer(Rational(4)));
    CHECK_FALSE(is_integer(make_rational(1, 3)));
    CHECK(abs(make_rational(-1, 3)) == make_rational(1, 3));
    for (long p = -50; p <= 50; ++p)
        for (long q = 1; q <= 9; ++q) CHECK(floor_int(make_rational(p, q)) == oracle::floor_of(make_rational(p, q)));
}

TEST_CASE("scaled binomial identity") {
    CHECK(scaled_binomial_identity_check(4, 2));
    CHECK(scaled_binomial_identity_check(10, 3));
    for (long n = 1; n <= 64; ++n)
        for (long k = 1; k <= n; ++k) CHECK(scaled_binomial_identity_check(n, k));
}

TEST_CASE("precision control") {
    const int saved = precision_digits();
    set_precision_digits(100);
    CHECK(precision_digits() == 100);
    const Real third = to_real(make_rational(1, 3));
    const Real err = real_abs(third * 3 - 1);
    CHECK(err < Real("1e-99"));
    CHECK_THROWS_AS(set_precision_digits(2), DomainError);

    setenv(kPrecisionEnvVar, "40", 1);
    CHECK(precision_digits_from_env() == 40);
    setenv(kPrecisionEnvVar, "junk", 1);
    CHECK(precision_digits_from_env() == kDefaultPrecisionDigits);
    unsetenv(kPrecisionEnvVar);
    CHECK(precision_digits_from_env() == kDefaultPrecisionDigits);
    set_precision_digits(saved);
}

TEST_CASE("real formatting") {
    CHECK(format_real(to_real(make_rational(1, 8)), 6) == "1.25e-1");
    CHECK(format_real(Real(0), 6) == "0");
    CHECK(to_double(to_real(make_rational(3, 4))) == 0.75);
}
