#include "bernint/cli.hpp"

#include "bernint/errors.hpp"
#include "bernint/experiments.hpp"
#include "bernint/report_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

namespace bernint::cli {

namespace {

constexpr long kDefaultNMax = 256;
constexpr const char* kDefaultThreshold = "1/10";

struct SubcommandSpec {
    const char* name;
    const char* description;
    std::vector<std::string> options;   // accepted
    std::vector<std::string> required;  // subset of options
};

const std::vector<SubcommandSpec>& subcommands() {
    static const std::vector<SubcommandSpec> specs{
        {"basis", "Evaluate the basis polynomial p_{n,k}(x) exactly", {"n", "k", "at"}, {"n", "k", "at"}},
        {"apply", "Apply an operator; print its value at --at or its coefficients",
         {"op", "function", "n", "rule", "at"}, {"function", "n"}},
        {"derive", "Exact s-th derivative of an operator at --at", {"op", "function", "n", "s", "rule", "at"},
         {"function", "n", "at"}},
        {"moduli", "Grid estimates of omega_1 or the Ditzian-Totik omega_phi^2",
         {"function", "order", "t", "grid", "steps", "refine"}, {"function", "t"}},
        {"rates", "Sup-norm error sweep with bound ratios and log-log slope",
         {"op", "rule", "function", "s", "n", "grid", "steps", "bound"}, {"function", "n"}},
        {"check", "Exact check of the endpoint and tangent hypotheses", {"function", "s", "n-max"}, {"function"}},
        {"deviation", "Deviation of the integer operator's derivative from B_n's",
         {"function", "n", "s", "rule", "grid", "no-hypotheses"}, {"function", "n"}},
        {"necessity", "Derivative error trace for functions violating a hypothesis",
         {"function", "s", "op", "rule", "n", "threshold", "grid"}, {"function", "n"}},
        {"round", "Round a rational with a rounding rule", {"rule", "value"}, {"rule", "value"}},
    };
    return specs;
}

const SubcommandSpec& spec_for(const std::string& name) {
    for (const auto& s : subcommands())
        if (name == s.name) return s;
    throw LookupError("unknown subcommand '" + name + "'");
}

bool uses(const SubcommandSpec& spec, const std::string& option) {
    return std::find(spec.options.begin(), spec.options.end(), option) != spec.options.end();
}

struct ParsedApp {
    std::unique_ptr<CLI::App> app;
    RunConfig config;
    int precision_flag = 0;
};

void build(ParsedApp& parsed) {
    parsed.app = std::make_unique<CLI::App>("Bernstein polynomials with integer coefficients", "bernint");
    auto& app = *parsed.app;
    auto& c = parsed.config;
    app.require_subcommand(1, 1);

    for (const auto& spec : subcommands()) {
        auto* sub = app.add_subcommand(spec.name, spec.description);
        const auto req = [&](const std::string& name, CLI::Option* opt) {
            if (std::find(spec.required.begin(), spec.required.end(), name) != spec.required.end()) opt->required();
        };
        for (const auto& name : spec.options) {
            const std::string flag = "--" + name;
            CLI::Option* opt = nullptr;
            if (name == "function") opt = sub->add_option(flag, c.function, "Function spec: x2, neg-x2, x2(1-x)2, x3(1-x)3, x4(1-x)4, trunc3, poly:c0,c1,...");
            else if (name == "op") opt = sub->add_option(flag, c.op, "Operator: bn, btilde, bhat")->check(CLI::IsMember({"bn", "btilde", "bhat"}));
            else if (name == "rule") opt = sub->add_option(flag, c.rule, "Rounding rule: floor, half-up, half-down, half-toward-zero, half-away-zero, half-even, half-odd, half-random:<seed>[:p/q]");
            else if (name == "n") opt = sub->add_option(flag, c.n_list, "Degree(s), comma separated")->delimiter(',');
            else if (name == "s") opt = sub->add_option(flag, c.s, "Derivative order")->check(CLI::NonNegativeNumber);
            else if (name == "k") opt = sub->add_option(flag, c.k, "Basis index")->check(CLI::NonNegativeNumber);
            else if (name == "at") opt = sub->add_option(flag, c.at, "Evaluation point, rational in [0,1]");
            else if (name == "value") opt = sub->add_option(flag, c.value, "Rational value");
            else if (name == "order") opt = sub->add_option(flag, c.order, "Modulus: 1 or 2phi")->check(CLI::IsMember({"1", "2phi"}));
            else if (name == "t") opt = sub->add_option(flag, c.t_list, "Steps: rationals or invsqrt:N for N^(-1/2), comma separated")->delimiter(',');
            else if (name == "bound") opt = sub->add_option(flag, c.bound, "Bound: bn-value, btilde-value, bhat-value, bn-deriv, btilde-deriv, bhat-deriv, btilde-dev, bhat-dev");
            else if (name == "threshold") opt = sub->add_option(flag, c.threshold, "Non-convergence threshold (rational)");
            else if (name == "n-max") opt = sub->add_option(flag, c.n_max, "Largest n for the tangent inequalities")->check(CLI::PositiveNumber);
            else if (name == "grid") opt = sub->add_option(flag, c.grid, "Uniform grid size M")->check(CLI::PositiveNumber);
            else if (name == "steps") opt = sub->add_option(flag, c.steps, "Number of step values H for omega_phi^2")->check(CLI::PositiveNumber);
            else if (name == "refine") opt = sub->add_flag(flag, c.refine, "Double grid and steps until the estimate settles");
            else if (name == "no-hypotheses") opt = sub->add_flag(flag, c.skip_hypotheses, "Skip the theorem precondition check");
            req(name, opt);
        }
        sub->add_option("--precision", parsed.precision_flag, "Decimal digits for high-precision reals (default 64, env BERNINT_PRECISION)")
            ->check(CLI::Range(8, 100000));
        sub->add_option("--out", c.out, "Write output to this file instead of stdout");
        sub->add_option("--format", c.format, "Output format: plain, csv, json")->check(CLI::IsMember({"plain", "csv", "json"}));
    }
}

std::string normalize_step(const std::string& text) {
    if (text.starts_with("invsqrt:")) {
        const long n = std::stol(text.substr(8));
        if (n < 1) throw DomainError("invsqrt:N needs N >= 1");
        return "invsqrt:" + std::to_string(n);
    }
    return to_string(parse_rational(text));
}

Step parse_step(const std::string& text) {
    if (text.starts_with("invsqrt:")) return Step::inverse_sqrt(std::stol(text.substr(8)));
    return Step::of(parse_rational(text));
}

void normalize(ParsedApp& parsed) {
    auto& c = parsed.config;
    for (const auto* sub : parsed.app->get_subcommands()) c.subcommand = sub->get_name();
    const auto& spec = spec_for(c.subcommand);
    if (parsed.precision_flag != 0) c.precision = parsed.precision_flag;

    if (uses(spec, "function")) catalog_get(c.function);
    if (uses(spec, "op") && c.op.empty()) c.op = "bn";
    if (uses(spec, "rule")) {
        if (c.rule.empty()) {
            if (c.subcommand == "deviation" || c.op == "bhat") c.rule = "half-even";
            else c.rule = "floor";
        }
        c.rule = to_string(parse_rule(c.rule));
    }
    if (uses(spec, "at")) {
        if (!c.at.empty()) c.at = to_string(parse_rational(c.at));
    }
    if (uses(spec, "value")) c.value = to_string(parse_rational(c.value));
    if (uses(spec, "order") && c.order.empty()) c.order = "2phi";
    if (uses(spec, "t"))
        for (auto& t : c.t_list) t = normalize_step(t);
    if (uses(spec, "grid") && c.grid == 0) c.grid = kDefaultModulusGrid;
    if (uses(spec, "steps") && c.steps == 0) c.steps = kDefaultModulusSteps;
    if (uses(spec, "n-max") && c.n_max == 0) c.n_max = kDefaultNMax;
    if (uses(spec, "threshold")) c.threshold = to_string(parse_rational(c.threshold.empty() ? kDefaultThreshold : c.threshold));
    if (uses(spec, "bound")) {
        if (c.bound.empty()) c.bound = to_string(default_bound(parse_operator(c.op), c.s));
        c.bound = to_string(parse_bound_kind(c.bound));
    }
    if (uses(spec, "n")) {
        for (const long n : c.n_list)
            if (n < 1) throw DomainError("every --n value must be >= 1");
        if ((c.subcommand == "basis" || c.subcommand == "apply" || c.subcommand == "derive") && c.n_list.size() != 1)
            throw DomainError("--n takes a single value for '" + c.subcommand + "'");
    }
}

void parse_into(ParsedApp& parsed, const std::vector<std::string>& args) {
    build(parsed);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    parsed.app->parse(reversed);
}

std::string join(const std::vector<long>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
    return out;
}

std::string show(const Measured& m) { return m.exact ? to_string(*m.exact) : format_real(m.value); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// --- subcommand bodies -------------------------------------------------------------------------

void run_round(const RunConfig& c, std::ostream& out) {
    const auto value = round_value(parse_rational(c.value), parse_rule(c.rule));
    if (c.format == "json")
        out << nlohmann::json{{"value", c.value}, {"rule", c.rule}, {"rounded", to_string(value)}}.dump(2) << '\n';
    else
        out << to_string(value) << '\n';
}

void run_basis(const RunConfig& c, std::ostream& out) {
    const auto v = basis_eval(c.n_list.front(), c.k, parse_rational(c.at));
    if (c.format == "json")
        out << nlohmann::json{{"n", c.n_list.front()}, {"k", c.k}, {"at", c.at}, {"value", to_string(v)}}.dump(2) << '\n';
    else
        out << to_string(v) << '\n';
}

void run_apply(const RunConfig& c, std::ostream& out) {
    const auto f = catalog_get(c.function);
    const auto op = parse_operator(c.op);
    const long n = c.n_list.front();
    const auto rule = parse_rule(c.rule);
    const auto poly = operator_derivative_poly(f, op, n, 0, rule);
    if (!c.at.empty()) {
        const auto v = poly(parse_rational(c.at));
        if (c.format == "json")
            out << nlohmann::json{{"operator", c.op}, {"function", f.id()}, {"n", n}, {"at", c.at}, {"value", to_string(v)}}.dump(2) << '\n';
        else
            out << to_string(v) << '\n';
        return;
    }
    const auto raw = poly.to_form(BasisForm::Raw).coeffs();
    if (c.format == "json") {
        nlohmann::json j{{"operator", c.op}, {"function", f.id()}, {"n", n}, {"rule", c.rule}};
        for (std::size_t k = 0; k < raw.size(); ++k) {
            j["normalized"].push_back(to_string(poly.coeffs()[k]));
            j["raw"].push_back(to_string(raw[k]));
        }
        out << j.dump(2) << '\n';
    } else if (c.format == "csv") {
        out << "k,normalized,raw\n";
        for (std::size_t k = 0; k < raw.size(); ++k) out << k << ',' << to_string(poly.coeffs()[k]) << ',' << to_string(raw[k]) << '\n';
    } else {
        for (std::size_t k = 0; k < raw.size(); ++k)
            out << "k=" << k << "  b=" << to_string(poly.coeffs()[k]) << "  a=" << to_string(raw[k]) << '\n';
    }
}

void run_derive(const RunConfig& c, std::ostream& out) {
    const auto f = catalog_get(c.function);
    const auto poly = operator_derivative_poly(f, parse_operator(c.op), c.n_list.front(), c.s, parse_rule(c.rule));
    const auto v = poly(parse_rational(c.at));
    if (c.format == "json")
        out << nlohmann::json{{"operator", c.op}, {"function", f.id()}, {"n", c.n_list.front()}, {"s", c.s}, {"at", c.at}, {"value", to_string(v)}}.dump(2) << '\n';
    else
        out << to_string(v) << '\n';
}

void run_moduli(const RunConfig& c, std::ostream& out) {
    const auto f = catalog_get(c.function);
    std::vector<ModulusEstimate> estimates;
    for (const auto& t : c.t_list) {
        const auto step = parse_step(t);
        if (c.order == "1") estimates.push_back(omega1(f, step, c.grid));
        else if (c.refine) estimates.push_back(omega2_phi_refined(f, step, c.grid, c.steps));
        else estimates.push_back(omega2_phi(f, step, c.grid, c.steps));
    }
    if (c.format == "json") {
        nlohmann::json j{{"function", f.id()}, {"order", c.order}, {"estimates", nlohmann::json::array()}};
        for (const auto& e : estimates) j["estimates"].push_back(to_json(e));
        out << j.dump(2) << '\n';
    } else if (c.format == "csv") {
        out << "t,value,exact\n";
        for (std::size_t i = 0; i < estimates.size(); ++i)
            out << c.t_list[i] << ',' << format_real(estimates[i].value) << ','
                << (estimates[i].exact ? to_string(*estimates[i].exact) : "") << '\n';
    } else {
        for (std::size_t i = 0; i < estimates.size(); ++i)
            out << "t=" << c.t_list[i] << "  value=" << format_real(estimates[i].value)
                << (estimates[i].exact ? "  exact=" + to_string(*estimates[i].exact) : "") << '\n';
    }
}

void run_rates(const RunConfig& c, std::ostream& out) {
    const auto f = catalog_get(c.function);
    SweepOptions options;
    options.grid = c.grid;
    options.modulus = {c.grid, c.steps};
    options.bound = parse_bound_kind(c.bound);
    const auto report = rate_sweep(f, parse_operator(c.op), c.s, parse_rule(c.rule), c.n_list, options);
    if (c.format == "json") {
        out << to_json(report).dump(2) << '\n';
    } else if (c.format == "csv") {
        write_rate_csv(report, out);
    } else {
        out << "operator=" << to_string(report.op) << " function=" << report.function_id << " s=" << report.s
            << " rule=" << to_string(report.rule) << " bound=" << to_string(report.bound_kind) << '\n';
        for (const auto& w : report.warnings) out << "warning: " << w << '\n';
        for (const auto& row : report.rows)
            out << std::setw(6) << row.n << "  sup_error=" << format_real(row.sup_error.value, 12)
                << "  bound=" << format_real(row.bound.total.value, 12)
                << "  ratio=" << (row.ratio ? format_real(*row.ratio, 12) : std::string("nan")) << '\n';
        if (report.exact_zero) out << "all errors exactly 0\n";
        out << "slope=" << (report.slope ? std::to_string(*report.slope) : std::string("undefined")) << '\n';
    }
}

void run_check(const RunConfig& c, std::ostream& out) {
    const auto f = catalog_get(c.function);
    const auto report = check_hypotheses(f, c.s, c.n_max);
    if (c.format == "json") {
        out << to_json(report).dump(2) << '\n';
        return;
    }
    if (c.format == "csv") {
        out << "n,lower_tangent,upper_tangent\n";
        for (const auto& row : report.rows) out << row.n << ',' << row.lower_tangent << ',' << row.upper_tangent << '\n';
        return;
    }
    out << "function=" << report.function_id << " s=" << report.s << '\n';
    for (std::size_t i = 0; i < report.profile.at0.size(); ++i)
        out << "f^(" << i << ")(0)=" << to_string(report.profile.at0[i]) << "  f^(" << i
            << ")(1)=" << to_string(report.profile.at1[i]) << '\n';
    out << "integral endpoints: " << yes_no(report.integral_endpoints) << '\n';
    out << "vanishing higher derivatives: " << yes_no(report.vanishing_higher) << '\n';
    out << "tangent inequalities from n0: " << (report.n0 ? std::to_string(*report.n0) : std::string("none up to ") + std::to_string(c.n_max)) << '\n';
}

void run_deviation(const RunConfig& c, std::ostream& out) {
    const auto f = catalog_get(c.function);
    DeviationOptions options{c.grid, !c.skip_hypotheses};
    std::vector<DeviationReport> reports;
    for (const long n : c.n_list) reports.push_back(deviation_check(f, n, c.s, parse_rule(c.rule), options));
    if (c.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : reports) j.push_back(to_json(r));
        out << j.dump(2) << '\n';
        return;
    }
    if (c.format == "csv") out << "n,sup,majorant,holds,ratio\n";
    for (const auto& r : reports) {
        if (c.format == "csv")
            out << r.n << ',' << format_real(to_real(r.sup)) << ',' << format_real(to_real(r.majorant)) << ','
                << (r.holds() ? 1 : 0) << ',' << (r.ratio ? format_real(*r.ratio) : "nan") << '\n';
        else
            out << "n=" << r.n << "  sup=" << format_real(to_real(r.sup), 12) << "  majorant="
                << format_real(to_real(r.majorant), 12) << "  holds=" << yes_no(r.holds())
                << "  ratio=" << (r.ratio ? format_real(*r.ratio, 12) : "nan") << '\n';
    }
}

void run_necessity(const RunConfig& c, std::ostream& out) {
    const auto f = catalog_get(c.function);
    const auto report = necessity_probe(f, c.s, parse_operator(c.op), parse_rule(c.rule), c.n_list,
                                        to_real(parse_rational(c.threshold)), c.grid);
    if (c.format == "json") {
        out << to_json(report).dump(2) << '\n';
        return;
    }
    if (c.format == "csv") {
        out << "n,sup_error,endpoint_value,endpoint_error\n";
        for (const auto& row : report.rows)
            out << row.n << ',' << format_real(row.sup_error.value) << ',' << to_string(row.endpoint_value) << ','
                << to_string(row.endpoint_error) << '\n';
        return;
    }
    out << "target f^(" << report.s << ")(0)=" << to_string(report.target) << '\n';
    for (const auto& row : report.rows)
        out << std::setw(6) << row.n << "  sup_error=" << show(row.sup_error) << "  at0=" << to_string(row.endpoint_value)
            << "  error_at0=" << to_string(row.endpoint_error) << '\n';
    out << (report.convergent ? "CONVERGENT" : "NON-CONVERGENT") << " (min error " << format_real(report.min_error, 12)
        << ", threshold " << c.threshold << ")\n";
}

void execute(const RunConfig& c, std::ostream& out) {
    if (c.subcommand == "round") run_round(c, out);
    else if (c.subcommand == "basis") run_basis(c, out);
    else if (c.subcommand == "apply") run_apply(c, out);
    else if (c.subcommand == "derive") run_derive(c, out);
    else if (c.subcommand == "moduli") run_moduli(c, out);
    else if (c.subcommand == "rates") run_rates(c, out);
    else if (c.subcommand == "check") run_check(c, out);
    else if (c.subcommand == "deviation") run_deviation(c, out);
    else if (c.subcommand == "necessity") run_necessity(c, out);
    else throw LookupError("unknown subcommand '" + c.subcommand + "'");
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    ParsedApp parsed;
    parse_into(parsed, args);
    normalize(parsed);
    return parsed.config;
}

std::vector<std::string> to_args(const RunConfig& c) {
    const auto& spec = spec_for(c.subcommand);
    std::vector<std::string> args{c.subcommand};
    const auto emit = [&](const std::string& name, const std::string& value) {
        if (!uses(spec, name) || value.empty()) return;
        args.push_back("--" + name);
        args.push_back(value);
    };
    emit("function", c.function);
    emit("op", c.op);
    emit("rule", c.rule);
    emit("n", join(c.n_list));
    if (uses(spec, "s")) emit("s", std::to_string(c.s));
    if (uses(spec, "k")) emit("k", std::to_string(c.k));
    emit("at", c.at);
    emit("value", c.value);
    emit("order", c.order);
    if (uses(spec, "t") && !c.t_list.empty()) {
        std::string joined;
        for (std::size_t i = 0; i < c.t_list.size(); ++i) joined += (i ? "," : "") + c.t_list[i];
        emit("t", joined);
    }
    emit("bound", c.bound);
    emit("threshold", c.threshold);
    if (uses(spec, "n-max")) emit("n-max", std::to_string(c.n_max));
    if (uses(spec, "grid")) emit("grid", std::to_string(c.grid));
    if (uses(spec, "steps")) emit("steps", std::to_string(c.steps));
    if (uses(spec, "refine") && c.refine) args.push_back("--refine");
    if (uses(spec, "no-hypotheses") && c.skip_hypotheses) args.push_back("--no-hypotheses");
    if (c.precision) {
        args.push_back("--precision");
        args.push_back(std::to_string(*c.precision));
    }
    if (!c.out.empty()) {
        args.push_back("--out");
        args.push_back(c.out);
    }
    args.push_back("--format");
    args.push_back(c.format);
    return args;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    ParsedApp parsed;
    try {
        parse_into(parsed, args);
    } catch (const CLI::CallForHelp&) {
        out << parsed.app->help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << parsed.app->help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const auto subs = parsed.app->get_subcommands();
        err << (subs.empty() ? parsed.app->help() : subs.front()->help());
        return kExitUsage;
    }

    try {
        normalize(parsed);
        const auto& c = parsed.config;
        set_precision_digits(c.precision ? *c.precision : precision_digits_from_env());
        if (c.out.empty()) {
            execute(c, out);
        } else {
            std::ostringstream buffer;
            execute(c, buffer);
            std::ofstream file(c.out, std::ios::binary);
            if (!file) {
                err << "error: cannot open '" << c.out << "' for writing\n";
                return kExitFailure;
            }
            file << buffer.str();
        }
        return kExitOk;
    } catch (const AmbiguousTie& e) {
        err << "ambiguous tie: " << e.what() << '\n';
        return kExitAmbiguousTie;
    } catch (const PreconditionError& e) {
        err << "hypotheses not met: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const LookupError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace bernint::cli
