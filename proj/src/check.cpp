#include "dwv/check.hpp"

#include <algorithm>

namespace dwv {

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Reported: return "reported";
    }
    return "fail";
}

namespace {

/// "engine = c x display" when a single nonzero c makes the difference vanish.
template <class T, class First, class Coeff>
std::string ratio_detail(const T& engine, const T& display, First first, Coeff coeff) {
    if (display.is_zero() || engine.is_zero()) return {};
    auto [key, d] = first(display);
    Rational e = coeff(engine, key);
    if (e.is_zero()) return {};
    Rational c = e / d;
    if (!(engine - display.scaled(c)).is_zero()) return {};
    return "engine = " + c.str() + " x display";
}

}  // namespace

CheckOutcome compare_forms(std::string id, std::string label, const Form& engine, const Form& display) {
    CheckOutcome c = expect_zero(std::move(id), std::move(label), engine - display);
    if (c.residual_terms != 0) {
        c.detail = ratio_detail(
            engine, display,
            [](const Form& f) {
                const auto& [b, p] = *f.terms().begin();
                return std::pair{std::pair{b, p.terms().front().first}, p.terms().front().second};
            },
            [](const Form& f, const std::pair<Blade, Monomial>& k) { return coefficient_of(f.coefficient(k.first), k.second); });
    }
    return c;
}

CheckOutcome compare_polys(std::string id, std::string label, const Poly& engine, const Poly& display) {
    CheckOutcome c = expect_zero(std::move(id), std::move(label), engine - display);
    if (c.residual_terms != 0) {
        c.detail = ratio_detail(
            engine, display, [](const Poly& p) { return p.terms().front(); },
            [](const Poly& p, const Monomial& m) { return coefficient_of(p, m); });
    }
    return c;
}

CheckOutcome expect_zero(std::string id, std::string label, const Form& residual) {
    return {std::move(id), std::move(label), residual.term_count(), true, {}};
}

CheckOutcome expect_zero(std::string id, std::string label, const Poly& residual) {
    return {std::move(id), std::move(label), residual.size(), true, {}};
}

Rational coefficient_of(const Poly& p, const Monomial& m) {
    const auto& t = p.terms();
    auto it = std::lower_bound(t.begin(), t.end(), m,
                               [](const Poly::Term& a, const Monomial& b) { return a.first < b; });
    return it != t.end() && it->first == m ? it->second : Rational(0);
}

Proportionality proportional(const std::vector<Poly>& engine, const std::vector<Poly>& display) {
    Proportionality out;
    const std::size_t n = std::min(engine.size(), display.size());
    for (std::size_t i = 0; i < n && !out.factor; ++i) {
        if (display[i].is_zero()) continue;
        const auto& [m, d] = display[i].terms().front();
        Rational e = coefficient_of(engine[i], m);
        if (!e.is_zero()) out.factor = e / d;
        else break;
    }
    std::size_t residual = 0;
    for (std::size_t i = 0; i < n; ++i) {
        residual += out.factor ? (engine[i] - display[i].scaled(*out.factor)).size()
                               : engine[i].size() + display[i].size();
    }
    for (std::size_t i = n; i < engine.size(); ++i) residual += engine[i].size();
    for (std::size_t i = n; i < display.size(); ++i) residual += display[i].size();
    bool all_zero = std::all_of(engine.begin(), engine.end(), [](const Poly& p) { return p.is_zero(); }) &&
                    std::all_of(display.begin(), display.end(), [](const Poly& p) { return p.is_zero(); });
    if (all_zero) return {Rational(1), 0};
    out.residual_terms = residual;
    if (residual != 0) out.factor.reset();
    return out;
}

CheckOutcome compare_blocks(std::string id, std::string label, const std::vector<Poly>& engine,
                            const std::vector<Poly>& display) {
    Proportionality p = proportional(engine, display);
    CheckOutcome c{std::move(id), std::move(label), p.residual_terms, true, {}};
    if (p.factor) c.detail = "factor " + p.factor->str();
    else c.detail = "not proportional";
    return c;
}

}  // namespace dwv
