#include "bernint/report_io.hpp"

#include <cstdio>

namespace bernint {

using nlohmann::json;

namespace {

json optional_real(const std::optional<Real>& v) { return v ? json(format_real(*v)) : json(nullptr); }

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

json to_json(const Measured& m) {
    return json{{"value", format_real(m.value)}, {"exact", m.exact ? json(to_string(*m.exact)) : json(nullptr)}};
}

json to_json(const ModulusEstimate& e) {
    return json{{"t", format_real(e.t.value())},
                {"t_squared", to_string(e.t.squared())},
                {"value", format_real(e.value)},
                {"exact", e.exact ? json(to_string(*e.exact)) : json(nullptr)},
                {"grid", e.grid},
                {"steps", e.steps},
                {"direction", "lower"}};
}

json to_json(const BoundValue& b) {
    const auto part = [](const std::optional<Measured>& m) { return m ? to_json(*m) : json(nullptr); };
    return json{{"total", to_json(b.total)},
                {"omega2_phi", part(b.omega2)},
                {"omega1", part(b.omega1)},
                {"norm_term", part(b.norm)},
                {"constant_term", to_string(b.constant_term)}};
}

json to_json(const RateReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"n", row.n},
                            {"sup_error", to_json(row.sup_error)},
                            {"bound", to_json(row.bound)},
                            {"ratio", optional_real(row.ratio)}});
    return json{{"kind", "rate"},
                {"operator", to_string(r.op)},
                {"function", r.function_id},
                {"s", r.s},
                {"rule", to_string(r.rule)},
                {"bound_kind", to_string(r.bound_kind)},
                {"grid", r.grid},
                {"rows", rows},
                {"slope", r.slope ? json(*r.slope) : json(nullptr)},
                {"exact_zero", r.exact_zero},
                {"warnings", r.warnings}};
}

json to_json(const HypothesisReport& r) {
    json at0 = json::array(), at1 = json::array(), rows = json::array();
    for (const auto& v : r.profile.at0) at0.push_back(to_string(v));
    for (const auto& v : r.profile.at1) at1.push_back(to_string(v));
    for (const auto& row : r.rows)
        rows.push_back(json{{"n", row.n}, {"lower_tangent", row.lower_tangent}, {"upper_tangent", row.upper_tangent}});
    return json{{"kind", "hypotheses"},
                {"function", r.function_id},
                {"s", r.s},
                {"derivatives_at_0", at0},
                {"derivatives_at_1", at1},
                {"integral_endpoints", r.integral_endpoints},
                {"vanishing_higher", r.vanishing_higher},
                {"n0", r.n0 ? json(*r.n0) : json(nullptr)},
                {"nearest_hypotheses", r.nearest_hypotheses()},
                {"floor_hypotheses", r.floor_hypotheses()},
                {"rows", rows}};
}

json to_json(const DeviationReport& r) {
    return json{{"kind", "deviation"},
                {"n", r.n},
                {"s", r.s},
                {"rule", to_string(r.rule)},
                {"sup", to_string(r.sup)},
                {"sup_value", format_real(to_real(r.sup))},
                {"majorant", to_string(r.majorant)},
                {"points_checked", r.points_checked},
                {"violations", r.violations},
                {"holds", r.holds()},
                {"reference", to_json(r.reference)},
                {"ratio", optional_real(r.ratio)}};
}

json to_json(const NecessityReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"n", row.n},
                            {"sup_error", to_json(row.sup_error)},
                            {"endpoint_value", to_string(row.endpoint_value)},
                            {"endpoint_error", to_string(row.endpoint_error)}});
    return json{{"kind", "necessity"},
                {"function", r.function_id},
                {"operator", to_string(r.op)},
                {"s", r.s},
                {"rule", to_string(r.rule)},
                {"target", to_string(r.target)},
                {"rows", rows},
                {"min_error", format_real(r.min_error)},
                {"threshold", format_real(r.threshold)},
                {"verdict", r.convergent ? "CONVERGENT" : "NON-CONVERGENT"}};
}

json to_json(const IntegerCoefficients& c) {
    json raw = json::array(), normalized = json::array();
    for (const auto& a : c.raw) raw.push_back(to_string(a));
    for (const auto& b : c.normalized) normalized.push_back(to_string(b));
    return json{{"n", c.n}, {"rule", to_string(c.rule)}, {"raw", raw}, {"normalized", normalized}};
}

json to_json(const ClosedFormReport& r) {
    json coeffs = json::array(), line = json::array();
    for (const auto& v : r.coefficients) coeffs.push_back(to_string(v));
    for (const auto& v : r.linear_values) line.push_back(to_string(v));
    return json{{"n", r.n},
                {"s", r.s},
                {"coefficients", coeffs},
                {"linear_values", line},
                {"linear_part_holds", r.linear_part_holds},
                {"leading_term", to_string(r.leading_term)},
                {"r_s", r.r_s ? json(*r.r_s) : json(nullptr)},
                {"mismatch", r.mismatch}};
}

void write_rate_csv(const RateReport& r, std::ostream& out, int digits) {
    out << kRateCsvHeader << '\n';
    for (const auto& row : r.rows) {
        out << row.n << ',' << format_real(row.sup_error.value, digits) << ','
            << format_real(row.bound.total.value, digits) << ','
            << (row.ratio ? format_real(*row.ratio, digits) : std::string("nan")) << '\n';
    }
    out << "# slope," << (r.slope ? format_double(*r.slope) : std::string("nan")) << '\n';
}

}  // namespace bernint
