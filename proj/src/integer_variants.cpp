#include "bernint/integer_variants.hpp"

#include "bernint/errors.hpp"

#include <array>
#include <charconv>
#include <utility>

namespace bernint {

namespace {

struct RuleName {
    RoundingKind kind;
    const char* name;
};

constexpr std::array<RuleName, 8> kRuleNames{{
    {RoundingKind::Floor, "floor"},
    {RoundingKind::HalfUp, "half-up"},
    {RoundingKind::HalfDown, "half-down"},
    {RoundingKind::HalfTowardZero, "half-toward-zero"},
    {RoundingKind::HalfAwayFromZero, "half-away-zero"},
    {RoundingKind::HalfToEven, "half-even"},
    {RoundingKind::HalfToOdd, "half-odd"},
    {RoundingKind::HalfRandom, "half-random"},
}};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// true: round the tie m + 1/2 up to m + 1
bool random_tie_up(const RoundingRule& rule, StreamKey key) {
    std::uint64_t h = splitmix64(rule.seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(key.n));
    h = splitmix64(h ^ static_cast<std::uint64_t>(key.k));
    // u = h / 2^64 uniform in [0,1); up iff u < p
    BigInt lhs = BigInt(static_cast<unsigned long>(h)) * rule.half_probability.get_den();
    BigInt rhs = rule.half_probability.get_num();
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), 64);
    return lhs < rhs;
}

BigInt resolve_tie(const BigInt& m, const RoundingRule& rule, StreamKey key) {
    switch (rule.kind) {
        case RoundingKind::HalfUp: return m + 1;
        case RoundingKind::HalfDown: return m;
        case RoundingKind::HalfTowardZero: return m >= 0 ? m : BigInt(m + 1);
        case RoundingKind::HalfAwayFromZero: return m >= 0 ? BigInt(m + 1) : m;
        case RoundingKind::HalfToEven: return mpz_even_p(m.get_mpz_t()) ? m : BigInt(m + 1);
        case RoundingKind::HalfToOdd: return mpz_odd_p(m.get_mpz_t()) ? m : BigInt(m + 1);
        case RoundingKind::HalfRandom: return random_tie_up(rule, key) ? BigInt(m + 1) : m;
        case RoundingKind::Floor: break;
    }
    return m;
}

}  // namespace

RoundingRule RoundingRule::random(std::uint64_t seed, Rational half_probability) {
    if (half_probability < 0 || half_probability > 1) throw DomainError("half probability must lie in [0,1]");
    return RoundingRule{RoundingKind::HalfRandom, seed, std::move(half_probability)};
}

bool operator==(const RoundingRule& a, const RoundingRule& b) {
    if (a.kind != b.kind) return false;
    if (a.kind != RoundingKind::HalfRandom) return true;
    return a.seed == b.seed && a.half_probability == b.half_probability;
}

RoundingRule parse_rule(std::string_view text) {
    const auto colon = text.find(':');
    const auto head = text.substr(0, colon);
    for (const auto& entry : kRuleNames) {
        if (head != entry.name) continue;
        if (entry.kind != RoundingKind::HalfRandom) {
            if (colon != std::string_view::npos) break;
            return RoundingRule::of(entry.kind);
        }
        if (colon == std::string_view::npos) break;
        auto rest = text.substr(colon + 1);
        const auto colon2 = rest.find(':');
        const auto seed_text = rest.substr(0, colon2);
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
        if (ec != std::errc{} || ptr != seed_text.data() + seed_text.size() || seed_text.empty()) break;
        Rational p = make_rational(1, 2);
        if (colon2 != std::string_view::npos) p = parse_rational(rest.substr(colon2 + 1));
        if (p < 0 || p > 1) break;
        return RoundingRule::random(seed, p);
    }
    throw LookupError("unknown rounding rule '" + std::string(text) +
                      "' (expected floor, half-up, half-down, half-toward-zero, half-away-zero, half-even, "
                      "half-odd or half-random:<seed>[:p/q])");
}

std::string to_string(const RoundingRule& rule) {
    for (const auto& entry : kRuleNames) {
        if (entry.kind != rule.kind) continue;
        if (rule.kind != RoundingKind::HalfRandom) return entry.name;
        std::string out = std::string(entry.name) + ":" + std::to_string(rule.seed);
        if (rule.half_probability != make_rational(1, 2)) out += ":" + to_string(rule.half_probability);
        return out;
    }
    return "unknown";
}

std::vector<RoundingRule> tie_rules(std::uint64_t random_seed) {
    return {
        RoundingRule::of(RoundingKind::HalfUp),          RoundingRule::of(RoundingKind::HalfDown),
        RoundingRule::of(RoundingKind::HalfTowardZero),  RoundingRule::of(RoundingKind::HalfAwayFromZero),
        RoundingRule::of(RoundingKind::HalfToEven),      RoundingRule::of(RoundingKind::HalfToOdd),
        RoundingRule::random(random_seed),
    };
}

std::vector<RoundingRule> all_rules(std::uint64_t random_seed) {
    auto rules = tie_rules(random_seed);
    rules.insert(rules.begin(), RoundingRule::of(RoundingKind::Floor));
    return rules;
}

BigInt round_value(const Rational& value, const RoundingRule& rule, StreamKey key) {
    const BigInt m = floor_int(value);
    if (rule.kind == RoundingKind::Floor) return m;
    const Rational frac = value - Rational(m);
    const Rational half = make_rational(1, 2);
    if (frac < half) return m;
    if (frac > half) return m + 1;
    return resolve_tie(m, rule, key);
}

Real tie_guard(const Real& value) {
    Real scale = real_abs(value);
    if (scale < 1) scale = 1;
    Real guard;
    mpf_pow_ui(guard.get_mpf_t(), Real(10).get_mpf_t(), static_cast<unsigned long>(precision_digits() / 2));
    return scale / guard;
}

BigInt round_value(const Real& value, const RoundingRule& rule, const Real& guard, StreamKey key) {
    const Real fl = floor(value);
    const Real frac = value - fl;
    const BigInt m(fl);
    if (rule.kind == RoundingKind::Floor) {
        if (frac < guard || 1 - frac < guard)
            throw AmbiguousTie("value " + format_real(value, 20) + " is too close to an integer to take its floor");
        return m;
    }
    if (real_abs(frac - Real(0.5)) < guard)
        throw AmbiguousTie("value " + format_real(value, 20) + " is too close to a half-integer to round");
    (void)key;
    return frac < 0.5 ? m : BigInt(m + 1);
}

IntegerCoefficients coefficients(const TestFunction& f, long n, const RoundingRule& rule) {
    if (n < 1) throw DomainError("integer operator needs n >= 1");
    IntegerCoefficients out;
    out.n = n;
    out.rule = rule;
    out.raw.resize(static_cast<std::size_t>(n) + 1);
    out.normalized.resize(static_cast<std::size_t>(n) + 1);
    const auto row = binomial_row(n);
    for (long k = 0; k <= n; ++k) {
        const Rational node = make_rational(k, n);
        const StreamKey key{n, k};
        if (f.exact()) {
            out.raw[k] = round_value(f.eval(node) * Rational(row[k]), rule, key);
        } else {
            const Real scaled = f.eval_real(node) * to_real(row[k]);
            out.raw[k] = round_value(scaled, rule, tie_guard(scaled), key);
        }
        out.normalized[k] = make_rational(out.raw[k], row[k]);
    }
    return out;
}

BernsteinPoly apply_integer_operator(const TestFunction& f, long n, const RoundingRule& rule) {
    return BernsteinPoly(coefficients(f, n, rule).normalized, BasisForm::Normalized);
}

BernsteinPoly integer_operator_derivative_poly(const TestFunction& f, long n, int s, const RoundingRule& rule) {
    if (s < 0 || n < s) throw DegreeError("derivative formula needs n >= s >= 0");
    const auto c = coefficients(f, n, rule);
    return derivative_from_differences(c.normalized, s);
}

Rational integer_operator_derivative(const TestFunction& f, long n, int s, const RoundingRule& rule,
                                     const Rational& x) {
    if (x < 0 || x > 1) throw DomainError("x = " + to_string(x) + " lies outside [0,1]");
    return integer_operator_derivative_poly(f, n, s, rule)(x);
}

ClosedFormReport closed_form_coefficient_check(const TestFunction& f, long n, int s, const RoundingRule& rule) {
    if (s < 1) throw DomainError("closed-form check needs s >= 1");
    if (n < s) throw DegreeError("closed-form check needs n >= s");
    const auto profile = endpoint_profile(f, s);
    if (!profile.theorem_hypotheses())
        throw PreconditionError("function '" + f.id() + "' violates the endpoint hypotheses at order " +
                                std::to_string(s));

    const auto c = coefficients(f, n, rule);
    const Rational& f0 = profile.at0[0];
    const Rational& df0 = profile.at0[1];

    ClosedFormReport report;
    report.n = n;
    report.s = s;
    report.linear_part_holds = true;
    for (long k = 0; k <= s; ++k) {
        report.coefficients.push_back(c.normalized[k]);
        report.linear_values.push_back(f0 + make_rational(k, n) * df0);
        if (k < s) report.linear_part_holds = report.linear_part_holds && c.normalized[k] == report.linear_values[k];
    }

    if (s >= 2) {
        const Rational sfact(factorial(s));
        const Rational scaled = Rational(pow(BigInt(s), static_cast<unsigned long>(s))) * profile.at0[s] /
                                (sfact * sfact);
        report.leading_term = round_value(scaled, rule, StreamKey{0, s});
    }
    const Rational cns(binomial(n, s));
    const Rational remainder = (c.normalized[s] - report.linear_values[s]) * cns - Rational(report.leading_term);
    if (is_integer(remainder) && remainder >= -1 && remainder <= 1) {
        report.r_s = static_cast<int>(remainder.get_num().get_si());
    } else {
        report.mismatch = true;
    }
    return report;
}

bool lemma_lm_check(const Rational& alpha, const BigInt& m, const Rational& omega, const RoundingRule& rule,
                    StreamKey key) {
    if (!rule.is_nearest()) throw DomainError("the nearest-integer lemma does not apply to the floor rule");
    if (abs(alpha - Rational(m)) > omega) throw DomainError("lemma precondition |alpha - m| <= omega fails");
    const BigInt rounded = round_value(alpha, rule, key);
    return abs(Rational(rounded - m)) <= 2 * omega;
}

}  // namespace bernint
