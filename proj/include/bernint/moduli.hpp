#pragma once

// Grid estimators for the modulus of continuity and the second-order Ditzian-Totik modulus
// with weight phi(x) = sqrt(x(1-x)). Both are sups over finite sets, hence lower estimates.

#include "bernint/functions.hpp"
#include "bernint/numeric.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace bernint {

inline constexpr long kDefaultModulusGrid = 4096;
inline constexpr int kDefaultModulusSteps = 64;

/// A positive step t, stored through its exact square so that t = n^(-1/2) stays exact.
class Step {
public:
    static Step of(const Rational& t);
    static Step from_square(const Rational& t_squared);
    static Step inverse_sqrt(long n) { return from_square(make_rational(1, n)); }

    const Rational& squared() const { return squared_; }
    Real value() const;
    /// floor(t * m), exact.
    BigInt floor_times(long m) const;

private:
    explicit Step(Rational squared) : squared_(std::move(squared)) {}
    Rational squared_;
};

struct ModulusEstimate {
    Step t = Step::of(Rational(1));
    Real value;
    // Set when every quantity entering the sup was computed exactly.
    std::optional<Rational> exact;
    long grid = 0;
    int steps = 0;
};

/// sup |F(x) - F(y)| over pairs of the grid j/M with |x - y| <= t. Requires 0 < t <= 1, M >= 64.
ModulusEstimate omega1(const TestFunction& F, const Step& t, long grid = kDefaultModulusGrid);

/// sup over h in `steps` geometrically spaced values in (0, t] and x on the grid j/M of
/// |f(x - h phi(x)) - 2 f(x) + f(x + h phi(x))|, restricted to x +- h phi(x) in [0,1].
/// Exact for polynomials (the symmetric difference only involves h^2 phi(x)^2).
ModulusEstimate omega2_phi(const TestFunction& f, const Step& t, long grid = kDefaultModulusGrid,
                           int steps = kDefaultModulusSteps);

/// Repeatedly doubles grid and steps until the relative change drops below `tolerance`
/// (or `max_doublings` is reached); returns the last estimate.
ModulusEstimate omega2_phi_refined(const TestFunction& f, const Step& t, long grid = kDefaultModulusGrid,
                                   int steps = kDefaultModulusSteps, double tolerance = 1e-3, int max_doublings = 3);

/// The squared step ratios rho_i (h_i^2 = rho_i t^2) used by omega2_phi: rho_0 = 1, geometric down to 2^-16.
std::vector<Rational> omega2_step_ratios(int steps);

}  // namespace bernint
