#pragma once

// Integer-coefficient Bernstein operators: the floor variant and the nearest-integer
// variant under a chosen tie-breaking rule.

#include "bernint/bernstein.hpp"
#include "bernint/functions.hpp"
#include "bernint/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bernint {

enum class RoundingKind {
    Floor,
    HalfUp,
    HalfDown,
    HalfTowardZero,
    HalfAwayFromZero,
    HalfToEven,
    HalfToOdd,
    HalfRandom,
};

struct RoundingRule {
    RoundingKind kind = RoundingKind::Floor;
    // HalfRandom only.
    std::uint64_t seed = 0;
    // HalfRandom only: probability of rounding a tie m + 1/2 up to m + 1.
    Rational half_probability = make_rational(1, 2);

    static RoundingRule of(RoundingKind kind) { return RoundingRule{kind, 0, make_rational(1, 2)}; }
    static RoundingRule random(std::uint64_t seed, Rational half_probability = make_rational(1, 2));

    bool is_nearest() const { return kind != RoundingKind::Floor; }

    friend bool operator==(const RoundingRule& a, const RoundingRule& b);
};

/// CLI names: floor, half-up, half-down, half-toward-zero, half-away-zero, half-even, half-odd,
/// half-random:<seed>[:p/q].
RoundingRule parse_rule(std::string_view text);
std::string to_string(const RoundingRule& rule);

/// The six deterministic tie rules plus HalfRandom with the given seed.
std::vector<RoundingRule> tie_rules(std::uint64_t random_seed = 1);
/// Floor followed by tie_rules(random_seed).
std::vector<RoundingRule> all_rules(std::uint64_t random_seed = 1);

/// Identifies the coefficient being rounded; HalfRandom draws from a stream derived from
/// (seed, n, k), so results do not depend on evaluation order.
struct StreamKey {
    long n = 0;
    long k = 0;
};

BigInt round_value(const Rational& value, const RoundingRule& rule, StreamKey key = {});

/// Rounds a high-precision value. Throws AmbiguousTie when the value is within `guard` of a
/// point where the rule's decision changes (integers for Floor, half-integers otherwise).
BigInt round_value(const Real& value, const RoundingRule& rule, const Real& guard, StreamKey key = {});

/// Tie guard used for high-precision coefficients: 10^(-d/2) * max(1, |value|).
Real tie_guard(const Real& value);

struct IntegerCoefficients {
    long n = 0;
    RoundingRule rule;
    // A_k = rule(f(k/n) C(n,k))
    std::vector<BigInt> raw;
    // A_k / C(n,k)
    std::vector<Rational> normalized;
};

IntegerCoefficients coefficients(const TestFunction& f, long n, const RoundingRule& rule);

/// The integer-coefficient polynomial sum A_k x^k (1-x)^(n-k), in normalized form.
BernsteinPoly apply_integer_operator(const TestFunction& f, long n, const RoundingRule& rule);
BernsteinPoly integer_operator_derivative_poly(const TestFunction& f, long n, int s, const RoundingRule& rule);
Rational integer_operator_derivative(const TestFunction& f, long n, int s, const RoundingRule& rule,
                                     const Rational& x);

/// Coefficient identities that hold for large n when f meets the direct-theorem hypotheses:
/// b(k) = f(0) + (k/n) f'(0) for k < s, and for s >= 2
/// b(s) = f(0) + (s/n) f'(0) + (<s^s f^(s)(0) / (s!)^2> + r_s) / C(n,s), r_s in {-1,0,1}.
struct ClosedFormReport {
    long n = 0;
    int s = 0;
    // b(0), ..., b(s)
    std::vector<Rational> coefficients;
    // f(0) + (k/n) f'(0), k = 0..s
    std::vector<Rational> linear_values;
    bool linear_part_holds = false;
    // <s^s f^(s)(0)/(s!)^2> for s >= 2; 0 for s = 1
    BigInt leading_term = 0;
    // Observed remainder when it lies in {-1,0,1}; empty on mismatch.
    std::optional<int> r_s;
    bool mismatch = false;
};

/// Throws PreconditionError when f violates the integrality / vanishing hypotheses at order s.
ClosedFormReport closed_form_coefficient_check(const TestFunction& f, long n, int s, const RoundingRule& rule);

/// |<alpha> - m| <= 2 omega given |alpha - m| <= omega. Throws DomainError when the
/// precondition fails or the rule is Floor.
bool lemma_lm_check(const Rational& alpha, const BigInt& m, const Rational& omega, const RoundingRule& rule,
                    StreamKey key = {});

}  // namespace bernint
