#pragma once

// Exact integers and rationals (GMP) plus configurable high-precision reals.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bernint {

using BigInt = mpz_class;
// Always kept in canonical form: denominator > 0, gcd(|num|, den) = 1.
using Rational = mpq_class;
// Floating value whose precision is set from a decimal digit count (see set_precision_digits).
using Real = mpf_class;

inline constexpr int kDefaultPrecisionDigits = 64;
inline constexpr const char* kPrecisionEnvVar = "BERNINT_PRECISION";

/// Sets the working precision, in decimal digits, for every Real created afterwards.
/// Call before spawning worker threads.
void set_precision_digits(int digits);
int precision_digits();
/// Precision from BERNINT_PRECISION when set and valid, otherwise the default.
int precision_digits_from_env();

Rational make_rational(const BigInt& num, const BigInt& den);
Rational make_rational(long num, long den = 1);

/// Parses "p", "p/q" or a plain decimal such as "-0.25". Throws LookupError on malformed text.
Rational parse_rational(std::string_view text);
/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

/// C(n, k) by the multiplicative formula; exact for every n.
BigInt binomial(long n, long k);
/// C(n, 0), ..., C(n, n).
std::vector<BigInt> binomial_row(long n);
/// n! / (n - s)!
BigInt falling_factorial(long n, long s);
BigInt factorial(long n);
BigInt pow(const BigInt& base, unsigned long exponent);
Rational pow(const Rational& base, unsigned long exponent);

/// Largest integer <= value.
BigInt floor_int(const Rational& value);
BigInt ceil_int(const Rational& value);
bool is_integer(const Rational& value);
Rational abs(const Rational& value);

/// True iff (k/n) * C(n,k) == C(n-1,k-1) exactly. Requires 1 <= k <= n.
bool scaled_binomial_identity_check(long n, long k);

Real to_real(const Rational& value);
Real to_real(const BigInt& value);
Real real_abs(const Real& value);
double to_double(const Real& value);
/// Scientific notation with `digits` significant digits, e.g. "1.25e-2". Zero prints as "0".
std::string format_real(const Real& value, int digits = precision_digits());

}  // namespace bernint
