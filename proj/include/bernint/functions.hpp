#pragma once

// Catalog of test functions on [0,1] with exact evaluation and analytic derivatives.

#include "bernint/numeric.hpp"

#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace bernint {

/// Monomial coefficients, constant term first.
using MonomialCoeffs = std::vector<Rational>;

MonomialCoeffs monomial_derivative(const MonomialCoeffs& p);
MonomialCoeffs monomial_product(const MonomialCoeffs& a, const MonomialCoeffs& b);
Rational monomial_eval(const MonomialCoeffs& p, const Rational& x);
Real monomial_eval(const MonomialCoeffs& p, const Real& x);
/// Drops trailing zero coefficients; the zero polynomial becomes {0}.
MonomialCoeffs monomial_trim(MonomialCoeffs p);

/// A polynomial valid on [start, start of the next piece).
struct PolynomialPiece {
    Rational start;
    MonomialCoeffs coeffs;
};

using RealFunction = std::function<Real(const Real&)>;

class TestFunction {
public:
    static constexpr int kInfinitelySmooth = std::numeric_limits<int>::max();

    static TestFunction polynomial(std::string id, MonomialCoeffs coeffs);
    /// Pieces must start at 0 with strictly increasing starts; `s_max` is the caller's
    /// statement of how many derivatives are continuous across the joins.
    static TestFunction piecewise(std::string id, std::vector<PolynomialPiece> pieces, int s_max);
    /// Non-rational function given by f, f', ..., f^(s_max) as high-precision callables.
    static TestFunction from_real(std::string id, std::vector<RealFunction> derivatives);

    const std::string& id() const { return id_; }
    int s_max() const { return s_max_; }
    /// Rational-valued at rational points.
    bool exact() const { return real_derivs_.empty(); }
    bool is_polynomial() const { return exact() && pieces_.size() == 1; }
    const std::vector<PolynomialPiece>& pieces() const { return pieces_; }

    Rational eval(const Rational& x) const;
    Real eval_real(const Real& x) const;
    Real eval_real(const Rational& x) const;

    /// deriv(0) is a copy of *this. Throws SmoothnessError for order > s_max.
    TestFunction deriv(int order) const;

private:
    TestFunction() = default;
    const PolynomialPiece& piece_at(const Rational& x) const;

    std::string id_;
    int s_max_ = 0;
    std::vector<PolynomialPiece> pieces_;
    std::vector<RealFunction> real_derivs_;
};

/// Parses a function spec: "x2", "neg-x2", "x2(1-x)2", "x3(1-x)3", "x4(1-x)4", "trunc3",
/// or "poly:c0,c1,..." (rational monomial coefficients, constant first).
TestFunction catalog_get(std::string_view spec);
/// The built-in ids (without the poly: family).
std::vector<std::string> catalog_ids();

struct EndpointProfile {
    int s = 0;
    /// f^(i)(0) and f^(i)(1) for i = 0..max(s,1).
    std::vector<Rational> at0;
    std::vector<Rational> at1;
    /// f(0), f(1), f'(0), f'(1) all integers.
    bool integral_endpoints = false;
    /// f^(i)(0) = f^(i)(1) = 0 for i = 2..s (vacuously true for s < 2).
    bool vanishing_higher = false;

    bool theorem_hypotheses() const { return integral_endpoints && vanishing_higher; }
};

/// Throws SmoothnessError when s > s_max and DomainError for non-exact functions.
EndpointProfile endpoint_profile(const TestFunction& f, int s);

}  // namespace bernint
