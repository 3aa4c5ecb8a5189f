#include "bernint/experiments.hpp"

#include "bernint/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <thread>

namespace bernint {

namespace {

// Exact running maximum of non-negative fractions num/den.
class FractionMax {
public:
    void offer(const BigInt& num, const BigInt& den) {
        if (num * den_ > num_ * den) {
            num_ = num;
            den_ = den;
        }
    }
    Rational value() const { return make_rational(num_, den_); }

private:
    BigInt num_ = 0;
    BigInt den_ = 1;
};

// Runs `task(i)` for i in [0, count); results keep index order whatever the completion order.
template <typename Result, typename Task>
std::vector<Result> ordered_map(std::size_t count, Task task) {
    std::vector<Result> results;
    results.reserve(count);
    if (std::thread::hardware_concurrency() <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) results.push_back(task(i));
        return results;
    }
    std::vector<std::future<Result>> pending;
    pending.reserve(count);
    for (std::size_t i = 0; i < count; ++i) pending.push_back(std::async(std::launch::async, task, i));
    for (auto& p : pending) results.push_back(p.get());
    return results;
}

Measured add(const Measured& a, const Measured& b) {
    Measured out{a.value + b.value, std::nullopt};
    if (a.exact && b.exact) out.exact = *a.exact + *b.exact;
    return out;
}

Measured from_estimate(const ModulusEstimate& e) { return Measured{e.value, e.exact}; }

std::vector<long> sorted_unique(std::vector<long> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

constexpr std::array<std::pair<BoundKind, const char*>, 8> kBoundNames{{
    {BoundKind::BernsteinValue, "bn-value"},
    {BoundKind::FloorValue, "btilde-value"},
    {BoundKind::NearestValue, "bhat-value"},
    {BoundKind::BernsteinDerivative, "bn-deriv"},
    {BoundKind::FloorDerivative, "btilde-deriv"},
    {BoundKind::NearestDerivative, "bhat-deriv"},
    {BoundKind::FloorDeviation, "btilde-dev"},
    {BoundKind::NearestDeviation, "bhat-dev"},
}};

}  // namespace

OperatorKind parse_operator(std::string_view text) {
    if (text == "bn") return OperatorKind::Bn;
    if (text == "btilde") return OperatorKind::Btilde;
    if (text == "bhat") return OperatorKind::Bhat;
    throw LookupError("unknown operator '" + std::string(text) + "' (expected bn, btilde or bhat)");
}

std::string to_string(OperatorKind op) {
    switch (op) {
        case OperatorKind::Bn: return "bn";
        case OperatorKind::Btilde: return "btilde";
        case OperatorKind::Bhat: return "bhat";
    }
    return "unknown";
}

RoundingRule effective_rule(OperatorKind op, const RoundingRule& rule) {
    switch (op) {
        case OperatorKind::Bn: return rule;
        case OperatorKind::Btilde: return RoundingRule::of(RoundingKind::Floor);
        case OperatorKind::Bhat:
            if (!rule.is_nearest()) throw DomainError("bhat needs a nearest-integer rule, not floor");
            return rule;
    }
    return rule;
}

BernsteinPoly operator_derivative_poly(const TestFunction& f, OperatorKind op, long n, int s,
                                       const RoundingRule& rule) {
    if (op == OperatorKind::Bn) return bn_derivative_poly(f, n, s);
    return integer_operator_derivative_poly(f, n, s, effective_rule(op, rule));
}

SupGrid sup_grid(long grid, long n, int s) {
    if (grid < 1) throw DomainError("grid must be positive");
    SupGrid out;
    out.denominator = 8UL * static_cast<unsigned long>(grid);
    const unsigned long d = out.denominator;
    // dense band [0, 4s/n] and [1 - 4s/n, 1] in units of 1/d
    unsigned long band = 0;
    if (s > 0 && n > 0) {
        const Rational width = make_rational(4L * s, n);
        band = width >= 1 ? d : floor_int(width * Rational(BigInt(d))).get_ui();
    }
    for (unsigned long j = 0; j <= d; ++j)
        if (j % 8 == 0 || j <= band || j + band >= d) out.indices.push_back(j);
    return out;
}

Measured sup_error(const TestFunction& f, OperatorKind op, long n, int s, const RoundingRule& rule, long grid) {
    if (s < 0 || n < s) throw DegreeError("sup_error needs n >= s >= 0");
    const auto g = f.deriv(s);
    const auto poly = operator_derivative_poly(f, op, n, s, rule);
    const auto points = sup_grid(grid, n, s);
    const GridEvaluator eval(poly, points.denominator);

    if (g.exact()) {
        FractionMax best;
        BigInt num;
        for (const auto j : points.indices) {
            const Rational gx = g.eval(make_rational(static_cast<long>(j), static_cast<long>(points.denominator)));
            num = eval.numerator(j) * gx.get_den() - gx.get_num() * eval.denominator();
            mpz_abs(num.get_mpz_t(), num.get_mpz_t());
            best.offer(num, eval.denominator() * gx.get_den());
        }
        return Measured::of(best.value());
    }
    Real best = 0;
    const Real den = to_real(eval.denominator());
    for (const auto j : points.indices) {
        const Real px = to_real(eval.numerator(j)) / den;
        const Real gx = g.eval_real(make_rational(static_cast<long>(j), static_cast<long>(points.denominator)));
        const Real err = real_abs(px - gx);
        if (err > best) best = err;
    }
    return Measured{best, std::nullopt};
}

Measured sup_norm(const TestFunction& f, int s, long n, long grid) {
    const auto g = f.deriv(s);
    const auto points = sup_grid(grid, n, s);
    const long d = static_cast<long>(points.denominator);
    if (g.exact()) {
        Rational best = 0;
        for (const auto j : points.indices) {
            const Rational v = abs(g.eval(make_rational(static_cast<long>(j), d)));
            if (v > best) best = v;
        }
        return Measured::of(best);
    }
    Real best = 0;
    for (const auto j : points.indices) {
        const Real v = real_abs(g.eval_real(make_rational(static_cast<long>(j), d)));
        if (v > best) best = v;
    }
    return Measured{best, std::nullopt};
}

BoundKind parse_bound_kind(std::string_view text) {
    for (const auto& [kind, name] : kBoundNames)
        if (text == name) return kind;
    throw LookupError("unknown bound '" + std::string(text) + "'");
}

std::string to_string(BoundKind kind) {
    for (const auto& [k, name] : kBoundNames)
        if (k == kind) return name;
    return "unknown";
}

BoundKind default_bound(OperatorKind op, int s) {
    switch (op) {
        case OperatorKind::Bn: return s == 0 ? BoundKind::BernsteinValue : BoundKind::BernsteinDerivative;
        case OperatorKind::Btilde: return s == 0 ? BoundKind::FloorValue : BoundKind::FloorDerivative;
        case OperatorKind::Bhat: return s == 0 ? BoundKind::NearestValue : BoundKind::NearestDerivative;
    }
    return BoundKind::BernsteinValue;
}

BoundValue bound_value(const TestFunction& f, BoundKind kind, long n, int s, const ModulusOptions& options) {
    if (n < 1) throw DomainError("bound needs n >= 1");
    const bool value_kind =
        kind == BoundKind::BernsteinValue || kind == BoundKind::FloorValue || kind == BoundKind::NearestValue;
    if (value_kind && s != 0) throw DomainError("bound '" + to_string(kind) + "' applies to s = 0 only");
    if (!value_kind && s < 1) throw DomainError("bound '" + to_string(kind) + "' needs s >= 1");

    BoundValue out;
    const Rational inv_n = make_rational(1, n);
    const auto g = f.deriv(s);
    switch (kind) {
        case BoundKind::FloorValue:
        case BoundKind::FloorDerivative:
        case BoundKind::NearestDerivative:
        case BoundKind::FloorDeviation:
        case BoundKind::NearestDeviation: out.constant_term = inv_n; break;
        case BoundKind::NearestValue: out.constant_term = inv_n / 2; break;
        default: break;
    }
    const bool deviation = kind == BoundKind::FloorDeviation || kind == BoundKind::NearestDeviation;
    if (!deviation)
        out.omega2 = from_estimate(omega2_phi(g, Step::inverse_sqrt(n), options.grid, options.steps));
    if (!value_kind) out.omega1 = from_estimate(omega1(g, Step::of(inv_n), options.grid));
    if (!value_kind && !deviation && s >= 2) {
        auto norm = sup_norm(f, s, n, options.grid);
        norm.value /= Real(n);
        if (norm.exact) *norm.exact *= inv_n;
        out.norm = norm;
    }

    Measured total = Measured::of(out.constant_term);
    for (const auto* part : {&out.omega2, &out.omega1, &out.norm})
        if (part->has_value()) total = add(total, **part);
    out.total = total;
    return out;
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double det = m * sxx - sx * sx;
    if (det == 0) return std::nullopt;
    return (m * sxy - sx * sy) / det;
}

RateReport rate_sweep(const TestFunction& f, OperatorKind op, int s, const RoundingRule& rule,
                      std::vector<long> n_list, const SweepOptions& options) {
    n_list = sorted_unique(std::move(n_list));
    if (n_list.empty()) throw DomainError("rate sweep needs at least one n");
    if (n_list.front() < std::max(s, 1)) throw DegreeError("every n in a sweep must satisfy n >= max(s, 1)");

    RateReport report;
    report.op = op;
    report.function_id = f.id();
    report.s = s;
    report.rule = op == OperatorKind::Bn ? rule : effective_rule(op, rule);
    report.bound_kind = options.bound.value_or(default_bound(op, s));
    report.grid = options.grid;

    if (op != OperatorKind::Bn && f.exact()) {
        const auto profile = endpoint_profile(f, std::max(s, 0));
        if (!profile.integral_endpoints) report.warnings.push_back("endpoint values or first derivatives are not integers");
        if (!profile.vanishing_higher) report.warnings.push_back("higher endpoint derivatives do not vanish");
        if (op == OperatorKind::Btilde && s >= 1) {
            const auto hyp = check_hypotheses(f, s, n_list.back());
            if (!hyp.n0)
                report.warnings.push_back("tangent inequalities fail at the largest n; no n0 observed");
            else if (*hyp.n0 > n_list.front())
                report.warnings.push_back("tangent inequalities hold only from n0 = " + std::to_string(*hyp.n0));
        }
    }

    report.rows = ordered_map<RateRow>(n_list.size(), [&](std::size_t i) {
        RateRow row;
        row.n = n_list[i];
        row.sup_error = sup_error(f, op, row.n, s, rule, options.grid);
        row.bound = bound_value(f, report.bound_kind, row.n, s, options.modulus);
        if (row.bound.total.value > 0) row.ratio = Real(row.sup_error.value / row.bound.total.value);
        return row;
    });

    report.exact_zero = std::all_of(report.rows.begin(), report.rows.end(), [](const RateRow& r) {
        return r.sup_error.exact && *r.sup_error.exact == 0;
    });
    std::vector<double> xs, ys;
    for (const auto& row : report.rows) {
        if (row.n < options.slope_min_n || row.sup_error.value <= 0) continue;
        xs.push_back(static_cast<double>(row.n));
        ys.push_back(to_double(row.sup_error.value));
    }
    report.slope = loglog_slope(xs, ys);
    return report;
}

HypothesisRow tangent_inequalities(const TestFunction& f, int s, long n) {
    if (n < std::max(s, 1)) throw DomainError("tangent inequalities need n >= max(s, 1)");
    const auto df = f.deriv(1);
    const Rational f0 = f.eval(Rational(0));
    const Rational f1 = f.eval(Rational(1));
    const Rational d0 = df.eval(Rational(0));
    const Rational d1 = df.eval(Rational(1));
    HypothesisRow row;
    row.n = n;
    row.lower_tangent = true;
    for (long k = 1; k <= s; ++k) {
        const Rational x = make_rational(k, n);
        row.lower_tangent = row.lower_tangent && f.eval(x) >= f0 + x * d0;
    }
    row.upper_tangent = true;
    for (long k = n - s; k <= n - 1; ++k) {
        const Rational x = make_rational(k, n);
        row.upper_tangent = row.upper_tangent && f.eval(x) >= f1 - (1 - x) * d1;
    }
    return row;
}

HypothesisReport check_hypotheses(const TestFunction& f, int s, long n_max) {
    HypothesisReport report;
    report.function_id = f.id();
    report.s = s;
    report.profile = endpoint_profile(f, s);
    report.integral_endpoints = report.profile.integral_endpoints;
    report.vanishing_higher = report.profile.vanishing_higher;
    const long n_min = std::max(s, 1);
    for (long n = n_min; n <= n_max; ++n) report.rows.push_back(tangent_inequalities(f, s, n));
    for (auto it = report.rows.rbegin(); it != report.rows.rend(); ++it) {
        if (!(it->lower_tangent && it->upper_tangent)) break;
        report.n0 = it->n;
    }
    return report;
}

DeviationReport deviation_check(const TestFunction& f, long n, int s, const RoundingRule& rule,
                                const DeviationOptions& options) {
    if (s < 0 || n < s || n < 1) throw DegreeError("deviation check needs n >= s >= 0 and n >= 1");
    if (options.require_hypotheses) {
        const auto profile = endpoint_profile(f, s);
        if (!profile.theorem_hypotheses())
            throw PreconditionError("function '" + f.id() + "' violates the endpoint hypotheses at order " +
                                    std::to_string(s));
        if (!rule.is_nearest()) {
            const auto row = tangent_inequalities(f, s, n);
            if (!(row.lower_tangent && row.upper_tangent))
                throw PreconditionError("tangent inequalities fail for '" + f.id() + "' at n = " + std::to_string(n));
        }
    }

    const auto c = coefficients(f, n, rule);
    std::vector<Rational> gap(static_cast<std::size_t>(n) + 1);
    Rational max_gap = 0;
    for (long k = 0; k <= n; ++k) {
        gap[k] = f.eval(make_rational(k, n)) - c.normalized[k];
        max_gap = std::max(max_gap, abs(gap[k]));
    }

    DeviationReport report;
    report.n = n;
    report.s = s;
    report.rule = rule;
    report.majorant = Rational(pow(BigInt(2 * n), static_cast<unsigned long>(s))) * max_gap;

    const auto diff = derivative_from_differences(gap, s);
    const auto points = sup_grid(options.grid, n, s);
    const GridEvaluator eval(diff, points.denominator);
    const BigInt bound_den = report.majorant.get_den();
    const BigInt rhs = report.majorant.get_num() * eval.denominator();
    FractionMax best;
    BigInt num;
    for (const auto j : points.indices) {
        num = eval.numerator(j);
        mpz_abs(num.get_mpz_t(), num.get_mpz_t());
        best.offer(num, eval.denominator());
        if (num * bound_den > rhs) ++report.violations;
        ++report.points_checked;
    }
    report.sup = best.value();

    const auto w1 = omega1(f.deriv(s), Step::of(make_rational(1, n)), std::max(options.grid, 64L));
    report.reference = add(from_estimate(w1), Measured::of(make_rational(1, n)));
    if (report.reference.value > 0) report.ratio = Real(to_real(report.sup) / report.reference.value);
    return report;
}

NecessityReport necessity_probe(const TestFunction& f, int s, OperatorKind op, const RoundingRule& rule,
                                std::vector<long> n_list, const Real& threshold, long grid) {
    n_list = sorted_unique(std::move(n_list));
    if (n_list.empty()) throw DomainError("necessity probe needs at least one n");
    if (!f.exact()) throw DomainError("necessity probe needs an exactly evaluable function");
    NecessityReport report;
    report.function_id = f.id();
    report.op = op;
    report.s = s;
    report.rule = op == OperatorKind::Bn ? rule : effective_rule(op, rule);
    report.target = f.deriv(s).eval(Rational(0));
    report.threshold = threshold;

    report.rows = ordered_map<NecessityRow>(n_list.size(), [&](std::size_t i) {
        NecessityRow row;
        row.n = n_list[i];
        row.sup_error = sup_error(f, op, row.n, s, rule, grid);
        row.endpoint_value = operator_derivative_poly(f, op, row.n, s, rule)(Rational(0));
        row.endpoint_error = abs(row.endpoint_value - report.target);
        return row;
    });
    report.min_error = report.rows.front().sup_error.value;
    for (const auto& row : report.rows)
        if (row.sup_error.value < report.min_error) report.min_error = row.sup_error.value;
    report.convergent = !(report.min_error > threshold);
    return report;
}

}  // namespace bernint
