#include "bernint/moduli.hpp"

#include "bernint/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace bernint {

Step Step::of(const Rational& t) {
    if (t <= 0) throw DomainError("step must be positive");
    return Step(t * t);
}

Step Step::from_square(const Rational& t_squared) {
    if (t_squared <= 0) throw DomainError("step must be positive");
    return Step(t_squared);
}

Real Step::value() const { return sqrt(to_real(squared_)); }

BigInt Step::floor_times(long m) const {
    // floor(sqrt(y)) == floor(sqrt(floor(y))) for y >= 0
    const BigInt y = floor_int(squared_ * Rational(m) * Rational(m));
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), y.get_mpz_t());
    return root;
}

namespace {

void check_step(const Step& t) {
    if (t.squared() > 1) throw DomainError("step must satisfy 0 < t <= 1");
}

template <typename T>
T sliding_oscillation(const std::vector<T>& values, std::size_t window) {
    // max over i of (max - min) of values[i..i+window]
    std::deque<std::size_t> hi, lo;
    T best = 0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        while (!hi.empty() && values[hi.back()] <= values[j]) hi.pop_back();
        while (!lo.empty() && values[lo.back()] >= values[j]) lo.pop_back();
        hi.push_back(j);
        lo.push_back(j);
        while (hi.front() + window < j) hi.pop_front();
        while (lo.front() + window < j) lo.pop_front();
        const T spread = values[hi.front()] - values[lo.front()];
        if (spread > best) best = spread;
    }
    return best;
}

// Symmetric second difference of a polynomial f at x with offset u, where u^2 = h^2 x(1-x):
//   f(x-u) - 2f(x) + f(x+u) = sum_{j>=1} 2 f^(2j)(x) u^(2j) / (2j)!  =  sum_j (h^2)^j G_j(x)
// with G_j = 2/(2j)! f^(2j) (x(1-x))^j.
std::vector<MonomialCoeffs> second_difference_terms(const MonomialCoeffs& f) {
    std::vector<MonomialCoeffs> terms;
    const MonomialCoeffs weight{Rational(0), Rational(1), Rational(-1)};
    MonomialCoeffs weight_pow{Rational(1)};
    MonomialCoeffs d = monomial_trim(f);
    long order = 0;
    while (true) {
        d = monomial_derivative(monomial_derivative(d));
        order += 2;
        if (d.size() == 1 && d[0] == 0) break;
        weight_pow = monomial_product(weight_pow, weight);
        const Rational scale = make_rational(BigInt(2), factorial(order));
        MonomialCoeffs scaled = d;
        for (auto& c : scaled) c *= scale;
        terms.push_back(monomial_product(scaled, weight_pow));
    }
    return terms;
}

struct AdmissibleRange {
    long lo;
    long hi;
};

// j/M with h^2/(1+h^2) <= j/M <= 1/(1+h^2)
AdmissibleRange admissible(const Rational& h2, long grid) {
    const Rational m(grid);
    const Rational denom = 1 + h2;
    const long lo = ceil_int(m * h2 / denom).get_si();
    const long hi = floor_int(m / denom).get_si();
    return {lo, hi};
}

ModulusEstimate omega2_polynomial(const TestFunction& f, const Step& t, long grid, int steps) {
    const auto terms = second_difference_terms(f.pieces().front().coeffs);
    ModulusEstimate est{t, Real(0), Rational(0), grid, steps};
    if (terms.empty()) return est;

    Rational best = 0;
    for (const auto& ratio : omega2_step_ratios(steps)) {
        const Rational h2 = t.squared() * ratio;
        // P_h = sum_j h2^j G_j
        MonomialCoeffs p{Rational(0)};
        Rational h2pow = 1;
        for (const auto& g : terms) {
            h2pow *= h2;
            if (p.size() < g.size()) p.resize(g.size(), Rational(0));
            for (std::size_t i = 0; i < g.size(); ++i) p[i] += g[i] * h2pow;
        }
        p = monomial_trim(std::move(p));
        const std::size_t e = p.size() - 1;
        BigInt lcm = 1;
        for (const auto& c : p) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
        // value at j/M = Q(j) / (lcm * M^e), Q(j) = sum q_i j^i M^(e-i)
        std::vector<BigInt> q(e + 1);
        for (std::size_t i = 0; i <= e; ++i)
            q[i] = p[i].get_num() * (lcm / p[i].get_den()) * pow(BigInt(grid), static_cast<unsigned long>(e - i));
        const BigInt denominator = lcm * pow(BigInt(grid), static_cast<unsigned long>(e));

        const auto range = admissible(h2, grid);
        BigInt top = 0;
        BigInt acc;
        for (long j = range.lo; j <= range.hi; ++j) {
            acc = q[e];
            for (std::size_t i = e; i-- > 0;) {
                mpz_mul_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(j));
                acc += q[i];
            }
            mpz_abs(acc.get_mpz_t(), acc.get_mpz_t());
            if (acc > top) top = acc;
        }
        const Rational candidate = make_rational(top, denominator);
        if (candidate > best) best = candidate;
    }
    est.exact = best;
    est.value = to_real(best);
    return est;
}

ModulusEstimate omega2_general(const TestFunction& f, const Step& t, long grid, int steps) {
    ModulusEstimate est{t, Real(0), std::nullopt, grid, steps};
    std::vector<Real> fx(static_cast<std::size_t>(grid) + 1);
    std::vector<Real> phi(static_cast<std::size_t>(grid) + 1);
    const Real m(grid);
    for (long j = 0; j <= grid; ++j) {
        const Real x = Real(j) / m;
        fx[j] = f.eval_real(make_rational(j, grid));
        phi[j] = sqrt(x * (1 - x));
    }
    Real best = 0;
    for (const auto& ratio : omega2_step_ratios(steps)) {
        const Rational h2 = t.squared() * ratio;
        const Real h = sqrt(to_real(h2));
        const auto range = admissible(h2, grid);
        for (long j = range.lo; j <= range.hi; ++j) {
            const Real x = Real(j) / m;
            const Real u = h * phi[j];
            Real left = x - u;
            Real right = x + u;
            if (left < 0) left = 0;
            if (right > 1) right = 1;
            const Real value = real_abs(f.eval_real(left) - 2 * fx[j] + f.eval_real(right));
            if (value > best) best = value;
        }
    }
    est.value = best;
    return est;
}

}  // namespace

std::vector<Rational> omega2_step_ratios(int steps) {
    if (steps < 1) throw DomainError("need at least one step value");
    constexpr double kOctaves = 16.0;  // h^2 spans a factor 2^16, h spans 2^8
    std::vector<Rational> ratios;
    ratios.reserve(static_cast<std::size_t>(steps));
    ratios.emplace_back(1);
    const BigInt scale = pow(BigInt(2), 48);
    for (int i = 1; i < steps; ++i) {
        const double r = std::exp2(-kOctaves * i / (steps - 1));
        const BigInt num(std::lround(std::ldexp(r, 48)));
        ratios.push_back(make_rational(num, scale));
    }
    return ratios;
}

ModulusEstimate omega1(const TestFunction& F, const Step& t, long grid) {
    check_step(t);
    if (grid < 64) throw DomainError("modulus grid must have M >= 64");
    const auto window = static_cast<std::size_t>(t.floor_times(grid).get_ui());
    ModulusEstimate est{t, Real(0), std::nullopt, grid, 0};
    if (F.exact()) {
        std::vector<Rational> values(static_cast<std::size_t>(grid) + 1);
        for (long j = 0; j <= grid; ++j) values[j] = F.eval(make_rational(j, grid));
        const Rational best = sliding_oscillation(values, window);
        est.exact = best;
        est.value = to_real(best);
    } else {
        std::vector<Real> values(static_cast<std::size_t>(grid) + 1);
        for (long j = 0; j <= grid; ++j) values[j] = F.eval_real(make_rational(j, grid));
        est.value = sliding_oscillation(values, window);
    }
    return est;
}

ModulusEstimate omega2_phi(const TestFunction& f, const Step& t, long grid, int steps) {
    check_step(t);
    if (grid < 64) throw DomainError("modulus grid must have M >= 64");
    if (f.is_polynomial()) return omega2_polynomial(f, t, grid, steps);
    return omega2_general(f, t, grid, steps);
}

ModulusEstimate omega2_phi_refined(const TestFunction& f, const Step& t, long grid, int steps, double tolerance,
                                   int max_doublings) {
    auto current = omega2_phi(f, t, grid, steps);
    for (int i = 0; i < max_doublings; ++i) {
        grid *= 2;
        steps *= 2;
        auto next = omega2_phi(f, t, grid, steps);
        const Real change = real_abs(next.value - current.value);
        const bool settled = next.value == 0 ? change == 0 : change <= tolerance * next.value;
        current = std::move(next);
        if (settled) break;
    }
    return current;
}

}  // namespace bernint
