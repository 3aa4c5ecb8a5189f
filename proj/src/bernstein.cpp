#include "bernint/bernstein.hpp"

#include "bernint/errors.hpp"

#include <utility>

namespace bernint {

namespace {

void require_unit_interval(const Rational& x) {
    if (x < 0 || x > 1) throw DomainError("x = " + to_string(x) + " lies outside [0,1]");
}

}  // namespace

BernsteinPoly::BernsteinPoly(std::vector<Rational> coeffs, BasisForm form) : coeffs_(std::move(coeffs)), form_(form) {
    if (coeffs_.empty()) throw DomainError("a Bernstein polynomial needs at least one coefficient");
    if (form_ == BasisForm::Raw) {
        raw_ = coeffs_;
    } else {
        const auto row = binomial_row(degree());
        raw_.resize(coeffs_.size());
        for (std::size_t k = 0; k < coeffs_.size(); ++k) raw_[k] = coeffs_[k] * Rational(row[k]);
    }
    lcm_ = 1;
    for (const auto& a : raw_) mpz_lcm(lcm_.get_mpz_t(), lcm_.get_mpz_t(), a.get_den_mpz_t());
    scaled_.reserve(raw_.size());
    for (const auto& a : raw_) scaled_.push_back(a.get_num() * (lcm_ / a.get_den()));
}

BernsteinPoly BernsteinPoly::to_form(BasisForm form) const {
    if (form == form_) return *this;
    if (form == BasisForm::Raw) return BernsteinPoly(raw_, BasisForm::Raw);
    const auto row = binomial_row(degree());
    std::vector<Rational> normalized(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) normalized[k] = coeffs_[k] / Rational(row[k]);
    return BernsteinPoly(std::move(normalized), BasisForm::Normalized);
}

MonomialCoeffs BernsteinPoly::to_monomial() const {
    const long n = degree();
    const auto& raw = raw_;
    MonomialCoeffs out(static_cast<std::size_t>(n) + 1, Rational(0));
    for (long k = 0; k <= n; ++k) {
        if (raw[k] == 0) continue;
        const auto row = binomial_row(n - k);
        for (long j = 0; j <= n - k; ++j) {
            const Rational term = raw[k] * Rational(row[j]);
            if (j % 2 == 0)
                out[k + j] += term;
            else
                out[k + j] -= term;
        }
    }
    return monomial_trim(std::move(out));
}

Rational BernsteinPoly::operator()(const Rational& x) const {
    require_unit_interval(x);
    // x = p/q: sum A_k p^k (q-p)^(n-k) / (L q^n) with integer A_k = L a_k
    const BigInt& p = x.get_num();
    const BigInt& q = x.get_den();
    const BigInt v = q - p;
    const long n = degree();
    BigInt acc = scaled_[n];
    BigInt vpow = 1;
    for (long i = 1; i <= n; ++i) {
        vpow *= v;
        acc = acc * p + scaled_[n - i] * vpow;
    }
    return make_rational(acc, lcm_ * pow(q, static_cast<unsigned long>(n)));
}

Real BernsteinPoly::operator()(const Real& x) const {
    if (x < 0 || x > 1) throw DomainError("x lies outside [0,1]");
    const auto& raw = raw_;
    const Real y = 1 - x;
    const long n = degree();
    Real acc = to_real(raw[n]);
    Real ypow = 1;
    for (long i = 1; i <= n; ++i) {
        ypow *= y;
        acc = acc * x + to_real(raw[n - i]) * ypow;
    }
    return acc;
}

bool operator==(const BernsteinPoly& a, const BernsteinPoly& b) {
    if (a.degree() != b.degree()) return false;
    return a.to_form(BasisForm::Raw).coeffs_ == b.to_form(BasisForm::Raw).coeffs_;
}

Rational basis_eval(long n, long k, const Rational& x) {
    if (n < 0 || k < 0 || k > n) throw DomainError("basis_eval requires 0 <= k <= n");
    require_unit_interval(x);
    return Rational(binomial(n, k)) * pow(x, static_cast<unsigned long>(k)) *
           pow(Rational(1 - x), static_cast<unsigned long>(n - k));
}

BernsteinPoly apply_bn(const TestFunction& f, long n) {
    if (n < 1) throw DomainError("Bernstein operator needs n >= 1");
    std::vector<Rational> coeffs(static_cast<std::size_t>(n) + 1);
    for (long k = 0; k <= n; ++k) coeffs[k] = f.eval(make_rational(k, n));
    return BernsteinPoly(std::move(coeffs), BasisForm::Normalized);
}

std::vector<Rational> forward_diff(std::span<const Rational> values, int s) {
    if (s < 0) throw DomainError("negative difference order");
    if (values.size() < static_cast<std::size_t>(s) + 1)
        throw DomainError("forward_diff of order " + std::to_string(s) + " needs at least " + std::to_string(s + 1) +
                          " values");
    std::vector<Rational> d(values.begin(), values.end());
    for (int order = 0; order < s; ++order) {
        for (std::size_t k = 0; k + 1 < d.size(); ++k) d[k] = d[k + 1] - d[k];
        d.pop_back();
    }
    return d;
}

BernsteinPoly derivative_from_differences(std::span<const Rational> normalized_coeffs, int s) {
    const long n = static_cast<long>(normalized_coeffs.size()) - 1;
    if (s < 0 || s > n) throw DegreeError("derivative order " + std::to_string(s) + " exceeds degree " + std::to_string(n));
    auto diffs = forward_diff(normalized_coeffs, s);
    const Rational scale(falling_factorial(n, s));
    for (auto& d : diffs) d *= scale;
    return BernsteinPoly(std::move(diffs), BasisForm::Normalized);
}

BernsteinPoly bn_derivative_poly(const TestFunction& f, long n, int s) {
    if (s < 0 || n < s) throw DegreeError("(B_n f)^(s) formula needs n >= s >= 0");
    const auto bn = apply_bn(f, n);
    return derivative_from_differences(bn.coeffs(), s);
}

Rational bn_derivative(const TestFunction& f, long n, int s, const Rational& x) {
    require_unit_interval(x);
    return bn_derivative_poly(f, n, s)(x);
}

BernsteinPoly symbolic_derivative(const BernsteinPoly& p, int s) {
    if (s < 0) throw DomainError("negative derivative order");
    if (s > p.degree()) return BernsteinPoly::zero();
    auto raw = p.to_form(BasisForm::Raw).coeffs();
    for (int order = 0; order < s; ++order) {
        const long n = static_cast<long>(raw.size()) - 1;
        std::vector<Rational> next(static_cast<std::size_t>(n));
        for (long j = 0; j < n; ++j)
            next[j] = raw[j + 1] * static_cast<unsigned long>(j + 1) - raw[j] * static_cast<unsigned long>(n - j);
        raw = std::move(next);
    }
    return BernsteinPoly(std::move(raw), BasisForm::Raw).to_form(p.form());
}

GridEvaluator::GridEvaluator(const BernsteinPoly& p, unsigned long grid_denominator)
    : grid_denominator_(grid_denominator) {
    if (grid_denominator == 0) throw DomainError("grid denominator must be positive");
    const auto raw = p.to_form(BasisForm::Raw).coeffs();
    BigInt lcm = 1;
    for (const auto& a : raw) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a.get_den_mpz_t());
    scaled_.reserve(raw.size());
    for (const auto& a : raw) scaled_.push_back(a.get_num() * (lcm / a.get_den()));
    denominator_ = lcm * pow(BigInt(grid_denominator), static_cast<unsigned long>(p.degree()));
}

BigInt GridEvaluator::numerator(unsigned long j) const {
    if (j > grid_denominator_) throw DomainError("grid index outside [0, D]");
    const unsigned long v = grid_denominator_ - j;
    const std::size_t n = scaled_.size() - 1;
    BigInt acc = scaled_[n];
    BigInt vpow = 1;
    BigInt term;
    for (std::size_t i = 1; i <= n; ++i) {
        mpz_mul_ui(vpow.get_mpz_t(), vpow.get_mpz_t(), v);
        mpz_mul_ui(acc.get_mpz_t(), acc.get_mpz_t(), j);
        mpz_mul(term.get_mpz_t(), scaled_[n - i].get_mpz_t(), vpow.get_mpz_t());
        acc += term;
    }
    return acc;
}

}  // namespace bernint
