#include "bernint/functions.hpp"

#include "bernint/errors.hpp"

#include <algorithm>
#include <utility>

namespace bernint {

MonomialCoeffs monomial_trim(MonomialCoeffs p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    if (p.empty()) p.emplace_back(0);
    return p;
}

MonomialCoeffs monomial_derivative(const MonomialCoeffs& p) {
    if (p.size() <= 1) return {Rational(0)};
    MonomialCoeffs d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<unsigned long>(i);
    return d;
}

MonomialCoeffs monomial_product(const MonomialCoeffs& a, const MonomialCoeffs& b) {
    if (a.empty() || b.empty()) return {Rational(0)};
    MonomialCoeffs out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return monomial_trim(std::move(out));
}

Rational monomial_eval(const MonomialCoeffs& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Real monomial_eval(const MonomialCoeffs& p, const Real& x) {
    Real acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + to_real(*it);
    return acc;
}

TestFunction TestFunction::polynomial(std::string id, MonomialCoeffs coeffs) {
    TestFunction f;
    f.id_ = std::move(id);
    f.s_max_ = kInfinitelySmooth;
    f.pieces_.push_back({Rational(0), monomial_trim(std::move(coeffs))});
    return f;
}

TestFunction TestFunction::piecewise(std::string id, std::vector<PolynomialPiece> pieces, int s_max) {
    if (pieces.empty() || pieces.front().start != 0)
        throw DomainError("piecewise function must have a first piece starting at 0");
    for (std::size_t i = 1; i < pieces.size(); ++i)
        if (!(pieces[i - 1].start < pieces[i].start))
            throw DomainError("piece starts must be strictly increasing");
    if (s_max < 0) throw DomainError("s_max must be non-negative");
    TestFunction f;
    f.id_ = std::move(id);
    f.s_max_ = s_max;
    for (auto& p : pieces) p.coeffs = monomial_trim(std::move(p.coeffs));
    f.pieces_ = std::move(pieces);
    return f;
}

TestFunction TestFunction::from_real(std::string id, std::vector<RealFunction> derivatives) {
    if (derivatives.empty()) throw DomainError("from_real needs at least the function itself");
    TestFunction f;
    f.id_ = std::move(id);
    f.s_max_ = static_cast<int>(derivatives.size()) - 1;
    f.real_derivs_ = std::move(derivatives);
    return f;
}

const PolynomialPiece& TestFunction::piece_at(const Rational& x) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](const Rational& v, const PolynomialPiece& p) { return v < p.start; });
    return it == pieces_.begin() ? pieces_.front() : *std::prev(it);
}

Rational TestFunction::eval(const Rational& x) const {
    if (!exact()) throw DomainError("function '" + id_ + "' has no exact rational evaluation");
    return monomial_eval(piece_at(x).coeffs, x);
}

Real TestFunction::eval_real(const Real& x) const {
    if (!exact()) return real_derivs_.front()(x);
    if (pieces_.size() == 1) return monomial_eval(pieces_.front().coeffs, x);
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](const Real& v, const PolynomialPiece& p) { return v < to_real(p.start); });
    const auto& piece = it == pieces_.begin() ? pieces_.front() : *std::prev(it);
    return monomial_eval(piece.coeffs, x);
}

Real TestFunction::eval_real(const Rational& x) const {
    if (exact()) return to_real(eval(x));
    return real_derivs_.front()(to_real(x));
}

TestFunction TestFunction::deriv(int order) const {
    if (order < 0) throw DomainError("negative derivative order");
    if (order > s_max_)
        throw SmoothnessError("function '" + id_ + "' has only " + std::to_string(s_max_) +
                              " continuous derivatives, order " + std::to_string(order) + " requested");
    if (order == 0) return *this;
    TestFunction d = *this;
    d.id_ = id_ + "^(" + std::to_string(order) + ")";
    if (s_max_ != kInfinitelySmooth) d.s_max_ = s_max_ - order;
    if (!exact()) {
        d.real_derivs_.erase(d.real_derivs_.begin(), d.real_derivs_.begin() + order);
        return d;
    }
    for (auto& piece : d.pieces_)
        for (int i = 0; i < order; ++i) piece.coeffs = monomial_derivative(piece.coeffs);
    return d;
}

namespace {

// x^a (1 - x)^a
MonomialCoeffs bump(unsigned a) {
    MonomialCoeffs p(2 * a + 1, Rational(0));
    const auto row = binomial_row(a);
    for (unsigned j = 0; j <= a; ++j) {
        Rational c(row[j]);
        p[a + j] = (j % 2 == 0) ? c : Rational(-c);
    }
    return p;
}

TestFunction parse_poly(std::string_view spec, std::string_view body) {
    MonomialCoeffs coeffs;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        const auto comma = body.find(',', pos);
        const auto token = body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        coeffs.push_back(parse_rational(token));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (coeffs.empty()) throw LookupError("empty polynomial spec: '" + std::string(spec) + "'");
    return TestFunction::polynomial(std::string(spec), std::move(coeffs));
}

}  // namespace

std::vector<std::string> catalog_ids() {
    return {"x2", "neg-x2", "x2(1-x)2", "x3(1-x)3", "x4(1-x)4", "trunc3"};
}

TestFunction catalog_get(std::string_view spec) {
    using R = Rational;
    if (spec == "x2") return TestFunction::polynomial("x2", {R(0), R(0), R(1)});
    if (spec == "neg-x2") return TestFunction::polynomial("neg-x2", {R(0), R(0), R(-1)});
    if (spec == "x2(1-x)2") return TestFunction::polynomial("x2(1-x)2", bump(2));
    if (spec == "x3(1-x)3") return TestFunction::polynomial("x3(1-x)3", bump(3));
    if (spec == "x4(1-x)4") return TestFunction::polynomial("x4(1-x)4", bump(4));
    if (spec == "trunc3") {
        // 8 (x - 1/2)_+^3 = 8x^3 - 12x^2 + 6x - 1 on [1/2, 1]
        return TestFunction::piecewise("trunc3",
                                       {{R(0), {R(0)}}, {make_rational(1, 2), {R(-1), R(6), R(-12), R(8)}}}, 2);
    }
    if (spec.starts_with("poly:")) return parse_poly(spec, spec.substr(5));
    throw LookupError("unknown function '" + std::string(spec) + "'");
}

EndpointProfile endpoint_profile(const TestFunction& f, int s) {
    if (s < 0) throw DomainError("negative order");
    if (s > f.s_max())
        throw SmoothnessError("order " + std::to_string(s) + " exceeds smoothness of '" + f.id() + "'");
    if (!f.exact()) throw DomainError("endpoint profile needs an exactly evaluable function");

    EndpointProfile profile;
    profile.s = s;
    const int top = std::max(s, std::min(1, f.s_max()));
    for (int i = 0; i <= top; ++i) {
        const auto d = f.deriv(i);
        profile.at0.push_back(d.eval(Rational(0)));
        profile.at1.push_back(d.eval(Rational(1)));
    }
    profile.integral_endpoints = true;
    for (int i = 0; i <= std::min(top, 1); ++i)
        profile.integral_endpoints = profile.integral_endpoints && is_integer(profile.at0[i]) && is_integer(profile.at1[i]);
    if (top < 1) profile.integral_endpoints = false;
    profile.vanishing_higher = true;
    for (int i = 2; i <= s; ++i)
        profile.vanishing_higher = profile.vanishing_higher && profile.at0[i] == 0 && profile.at1[i] == 0;
    return profile;
}

}  // namespace bernint
