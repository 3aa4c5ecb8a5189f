#pragma once

// Error sweeps, theoretical bounds, hypothesis checks, deviation and necessity probes
// for the classical and integer-coefficient Bernstein operators.

#include "bernint/bernstein.hpp"
#include "bernint/functions.hpp"
#include "bernint/integer_variants.hpp"
#include "bernint/moduli.hpp"
#include "bernint/numeric.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bernint {

enum class OperatorKind { Bn, Btilde, Bhat };

OperatorKind parse_operator(std::string_view text);  // bn, btilde, bhat
std::string to_string(OperatorKind op);

/// Btilde always rounds with Floor; Bhat needs a nearest (Half*) rule; Bn ignores the rule.
RoundingRule effective_rule(OperatorKind op, const RoundingRule& rule);

/// (op f)^(s) as a normalized Bernstein polynomial of degree n - s.
BernsteinPoly operator_derivative_poly(const TestFunction& f, OperatorKind op, long n, int s,
                                       const RoundingRule& rule);

/// A grid-derived quantity: high-precision value, plus the exact rational when available.
struct Measured {
    Real value;
    std::optional<Rational> exact;

    static Measured of(const Rational& r) { return Measured{to_real(r), r}; }
};

/// Uniform grid j/M refined 8x on [0, 4s/n] and [1 - 4s/n, 1]; indices are over denominator 8M.
struct SupGrid {
    unsigned long denominator = 0;
    std::vector<unsigned long> indices;
};
SupGrid sup_grid(long grid, long n, int s);

/// max over the sup grid of |(op f)^(s) - f^(s)|.
Measured sup_error(const TestFunction& f, OperatorKind op, long n, int s, const RoundingRule& rule,
                   long grid = kDefaultModulusGrid);

/// max over the sup grid of |f^(s)|.
Measured sup_norm(const TestFunction& f, int s, long n, long grid = kDefaultModulusGrid);

/// Right-hand sides of the direct estimates, with the constant set to 1.
enum class BoundKind {
    BernsteinValue,       // w2phi(f, n^-1/2)
    FloorValue,           // w2phi(f, n^-1/2) + 1/n
    NearestValue,         // w2phi(f, n^-1/2) + 1/(2n)
    BernsteinDerivative,  // w2phi(f^(s), n^-1/2) + w1(f^(s), 1/n) [+ |f^(s)|/n for s >= 2]
    FloorDerivative,      // BernsteinDerivative + 1/n
    NearestDerivative,    // BernsteinDerivative + 1/n
    FloorDeviation,       // w1(f^(s), 1/n) + 1/n
    NearestDeviation,     // w1(f^(s), 1/n) + 1/n
};

BoundKind parse_bound_kind(std::string_view text);
std::string to_string(BoundKind kind);
/// The estimate matching an operator: value bounds for s = 0, derivative bounds otherwise.
BoundKind default_bound(OperatorKind op, int s);

struct ModulusOptions {
    long grid = kDefaultModulusGrid;
    int steps = kDefaultModulusSteps;
};

struct BoundValue {
    Measured total;
    std::optional<Measured> omega2;  // w2phi term
    std::optional<Measured> omega1;  // w1 term
    std::optional<Measured> norm;    // |f^(s)|/n term
    Rational constant_term = 0;      // 1/n, 1/(2n) or 0
};

/// Throws DomainError when the estimate does not apply to order s.
BoundValue bound_value(const TestFunction& f, BoundKind kind, long n, int s, const ModulusOptions& options = {});

struct RateRow {
    long n = 0;
    Measured sup_error;
    BoundValue bound;
    // sup_error / bound; empty when the bound is 0
    std::optional<Real> ratio;
};

struct RateReport {
    OperatorKind op = OperatorKind::Bn;
    std::string function_id;
    int s = 0;
    RoundingRule rule;
    BoundKind bound_kind = BoundKind::BernsteinValue;
    long grid = kDefaultModulusGrid;
    std::vector<RateRow> rows;  // ascending n
    // log-log least squares over rows with n >= 16 and sup_error > 0
    std::optional<double> slope;
    bool exact_zero = false;  // every sup_error is exactly 0
    std::vector<std::string> warnings;
};

struct SweepOptions {
    long grid = kDefaultModulusGrid;
    ModulusOptions modulus;
    std::optional<BoundKind> bound;
    long slope_min_n = 16;
};

RateReport rate_sweep(const TestFunction& f, OperatorKind op, int s, const RoundingRule& rule,
                      std::vector<long> n_list, const SweepOptions& options = {});

/// Least-squares slope of log(y) against log(x).
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct HypothesisRow {
    long n = 0;
    bool lower_tangent = false;  // f(k/n) >= f(0) + (k/n) f'(0), k = 1..s
    bool upper_tangent = false;  // f(k/n) >= f(1) - (1 - k/n) f'(1), k = n-s..n-1
};

struct HypothesisReport {
    std::string function_id;
    int s = 0;
    EndpointProfile profile;
    bool integral_endpoints = false;
    bool vanishing_higher = false;
    std::vector<HypothesisRow> rows;
    // smallest n (>= s) in the range from which both tangent families hold up to n_max
    std::optional<long> n0;

    bool nearest_hypotheses() const { return integral_endpoints && vanishing_higher; }
    bool floor_hypotheses() const { return nearest_hypotheses() && n0.has_value(); }
};

/// Evaluates every hypothesis exactly for n = max(s,1)..n_max.
HypothesisReport check_hypotheses(const TestFunction& f, int s, long n_max);
/// Tangent inequalities at one n.
HypothesisRow tangent_inequalities(const TestFunction& f, int s, long n);

struct DeviationOptions {
    long grid = kDefaultModulusGrid;
    bool require_hypotheses = true;
};

struct DeviationReport {
    long n = 0;
    int s = 0;
    RoundingRule rule;
    // max over the grid of |(B_n f)^(s) - (B_n^int f)^(s)|
    Rational sup = 0;
    // 2^s n^s max_k |f(k/n) - b(k)|
    Rational majorant = 0;
    std::size_t points_checked = 0;
    std::size_t violations = 0;
    // w1(f^(s), 1/n) + 1/n and sup divided by it
    Measured reference;
    std::optional<Real> ratio;

    bool holds() const { return violations == 0; }
};

/// Compares the integer operator (Floor rule: floor variant, otherwise nearest variant) with B_n.
/// With require_hypotheses, throws PreconditionError unless the matching theorem applies at n.
DeviationReport deviation_check(const TestFunction& f, long n, int s, const RoundingRule& rule,
                                const DeviationOptions& options = {});

struct NecessityRow {
    long n = 0;
    Measured sup_error;
    Rational endpoint_value = 0;  // (op f)^(s)(0)
    Rational endpoint_error = 0;  // |(op f)^(s)(0) - f^(s)(0)|
};

struct NecessityReport {
    std::string function_id;
    OperatorKind op = OperatorKind::Bn;
    int s = 0;
    RoundingRule rule;
    Rational target = 0;  // f^(s)(0)
    std::vector<NecessityRow> rows;
    Real min_error;
    Real threshold;
    bool convergent = true;
};

NecessityReport necessity_probe(const TestFunction& f, int s, OperatorKind op, const RoundingRule& rule,
                                std::vector<long> n_list, const Real& threshold, long grid = kDefaultModulusGrid);

}  // namespace bernint
