#include "bernint/numeric.hpp"

#include "bernint/errors.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace bernint {

namespace {

std::atomic<int> g_precision_digits{0};

mp_bitcnt_t digits_to_bits(int digits) {
    // log2(10) ~ 3.3219; a few guard bits on top.
    return static_cast<mp_bitcnt_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

struct PrecisionInit {
    PrecisionInit() { set_precision_digits(kDefaultPrecisionDigits); }
};
const PrecisionInit g_precision_init;

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace

void set_precision_digits(int digits) {
    if (digits < 8 || digits > 100000)
        throw DomainError("precision must be between 8 and 100000 decimal digits");
    g_precision_digits = digits;
    mpf_set_default_prec(digits_to_bits(digits));
}

int precision_digits() { return g_precision_digits; }

int precision_digits_from_env() {
    const char* env = std::getenv(kPrecisionEnvVar);
    if (env == nullptr || !all_digits(env)) return kDefaultPrecisionDigits;
    const long value = std::strtol(env, nullptr, 10);
    if (value < 8 || value > 100000) return kDefaultPrecisionDigits;
    return static_cast<int>(value);
}

Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational make_rational(long num, long den) { return make_rational(BigInt(num), BigInt(den)); }

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    const auto fail = [&]() { return LookupError("malformed rational: '" + std::string(text) + "'"); };
    if (s.empty()) throw fail();

    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Rational result;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = s.substr(0, slash);
        const auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw fail();
        const BigInt d(std::string(den), 10);
        if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
        result = make_rational(BigInt(std::string(num), 10), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        const auto whole = s.substr(0, dot);
        const auto frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            throw fail();
        const BigInt num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
        result = make_rational(num, pow(BigInt(10), frac.size()));
    } else {
        if (!all_digits(s)) throw fail();
        result = Rational(BigInt(std::string(s), 10));
    }
    return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const BigInt& value) { return value.get_str(); }

BigInt binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n)
        throw DomainError("binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") requires 0 <= k <= n");
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (long i = 1; i <= k; ++i) {
        result *= static_cast<unsigned long>(n - k + i);
        // exact: the running product is C(n-k+i, i) * i
        mpz_divexact_ui(result.get_mpz_t(), result.get_mpz_t(), static_cast<unsigned long>(i));
    }
    return result;
}

std::vector<BigInt> binomial_row(long n) {
    if (n < 0) throw DomainError("binomial_row requires n >= 0");
    std::vector<BigInt> row(static_cast<std::size_t>(n) + 1);
    row[0] = 1;
    for (long k = 1; k <= n; ++k) {
        BigInt next = row[k - 1] * static_cast<unsigned long>(n - k + 1);
        mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), static_cast<unsigned long>(k));
        row[k] = std::move(next);
    }
    return row;
}

BigInt falling_factorial(long n, long s) {
    if (s < 0 || n < s) throw DomainError("falling_factorial requires 0 <= s <= n");
    BigInt result = 1;
    for (long i = 0; i < s; ++i) result *= static_cast<unsigned long>(n - i);
    return result;
}

BigInt factorial(long n) {
    if (n < 0) throw DomainError("factorial of a negative number");
    return falling_factorial(n, n);
}

BigInt pow(const BigInt& base, unsigned long exponent) {
    BigInt result;
    mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
    return result;
}

Rational pow(const Rational& base, unsigned long exponent) {
    return make_rational(pow(base.get_num(), exponent), pow(base.get_den(), exponent));
}

BigInt floor_int(const Rational& value) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

BigInt ceil_int(const Rational& value) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

bool scaled_binomial_identity_check(long n, long k) {
    if (k < 1 || k > n) throw DomainError("scaled_binomial_identity_check requires 1 <= k <= n");
    const Rational lhs = make_rational(k, n) * Rational(binomial(n, k));
    return lhs == Rational(binomial(n - 1, k - 1));
}

Real to_real(const Rational& value) { return Real(value); }

Real to_real(const BigInt& value) { return Real(value); }

Real real_abs(const Real& value) { return value < 0 ? Real(-value) : value; }

double to_double(const Real& value) { return value.get_d(); }

std::string format_real(const Real& value, int digits) {
    if (value == 0) return "0";
    mp_exp_t exponent = 0;
    std::string mantissa = value.get_str(exponent, 10, static_cast<std::size_t>(digits));
    std::string sign;
    if (!mantissa.empty() && mantissa.front() == '-') {
        sign = "-";
        mantissa.erase(0, 1);
    }
    std::string out = sign + mantissa.substr(0, 1);
    if (mantissa.size() > 1) out += "." + mantissa.substr(1);
    const long e = static_cast<long>(exponent) - 1;
    if (e != 0) out += "e" + std::to_string(e);
    return out;
}

}  // namespace bernint
