#pragma once

// Classical Bernstein operator: basis, operator application, and derivatives.

#include "bernint/functions.hpp"
#include "bernint/numeric.hpp"

#include <span>
#include <vector>

namespace bernint {

enum class BasisForm {
    // sum c_k * C(n,k) x^k (1-x)^(n-k)
    Normalized,
    // sum a_k * x^k (1-x)^(n-k)
    Raw,
};

/// Degree-n polynomial in Bernstein form with exact coefficients.
class BernsteinPoly {
public:
    BernsteinPoly(std::vector<Rational> coeffs, BasisForm form);

    static BernsteinPoly zero() { return BernsteinPoly({Rational(0)}, BasisForm::Normalized); }

    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    BasisForm form() const { return form_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    BernsteinPoly to_form(BasisForm form) const;
    MonomialCoeffs to_monomial() const;

    /// Exact value; x must lie in [0,1].
    Rational operator()(const Rational& x) const;
    Real operator()(const Real& x) const;

    friend bool operator==(const BernsteinPoly& a, const BernsteinPoly& b);

private:
    std::vector<Rational> coeffs_;
    BasisForm form_;
    std::vector<Rational> raw_;
    std::vector<BigInt> scaled_;  // lcm_ * raw_, integer
    BigInt lcm_;
};

/// p_{n,k}(x) = C(n,k) x^k (1-x)^(n-k), exact.
Rational basis_eval(long n, long k, const Rational& x);

/// B_n f with coefficients f(k/n) (normalized form). Requires an exactly evaluable f.
BernsteinPoly apply_bn(const TestFunction& f, long n);

/// All s-th unit-step forward differences of `values`, by repeated first differences.
/// Result has values.size() - s entries.
std::vector<Rational> forward_diff(std::span<const Rational> values, int s);

/// Given normalized coefficients c_0..c_n of a degree-n polynomial, returns its s-th derivative
/// as n!/(n-s)! * sum Delta^s c_k p_{n-s,k}. Requires s <= n.
BernsteinPoly derivative_from_differences(std::span<const Rational> normalized_coeffs, int s);

/// (B_n f)^(s) as a normalized Bernstein polynomial of degree n - s.
BernsteinPoly bn_derivative_poly(const TestFunction& f, long n, int s);
/// (B_n f)^(s)(x); throws DegreeError when n < s.
Rational bn_derivative(const TestFunction& f, long n, int s, const Rational& x);

/// s-th derivative by termwise differentiation of the raw basis,
/// (x^k (1-x)^(n-k))' = k x^(k-1) (1-x)^(n-k) - (n-k) x^k (1-x)^(n-k-1).
/// Returns the zero polynomial of degree 0 when s > degree.
BernsteinPoly symbolic_derivative(const BernsteinPoly& p, int s);

/// Exact evaluation of a Bernstein polynomial on the grid j / D, j = 0..D, in integer arithmetic:
/// p(j/D) = numerator(j) / denominator().
class GridEvaluator {
public:
    GridEvaluator(const BernsteinPoly& p, unsigned long grid_denominator);

    BigInt numerator(unsigned long j) const;
    const BigInt& denominator() const { return denominator_; }
    Rational value(unsigned long j) const { return make_rational(numerator(j), denominator_); }

private:
    std::vector<BigInt> scaled_;  // L * a_k, integer
    unsigned long grid_denominator_;
    BigInt denominator_;           // L * D^n
};

}  // namespace bernint
