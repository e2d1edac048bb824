#include "dwv/properties.hpp"

#include "dwv/observables.hpp"

#include <algorithm>
#include <string>

namespace dwv {

namespace {

template <class G>
G random_graded(const Chart& chart, int k, std::uint64_t seed, int terms, int max_degree) {
    std::vector<VarId> coords;
    for (VarId v = 0; v < chart.size(); ++v)
        if (chart.is_coordinate(v)) coords.push_back(v);
    SplitMix64 r(seed);
    G out(k);
    for (int t = 0; t < terms; ++t) {
        std::vector<VarId> pick = coords;
        for (std::size_t i = pick.size(); i > 1; --i)
            std::swap(pick[i - 1], pick[static_cast<std::size_t>(r.uniform(0, static_cast<long>(i) - 1))]);
        pick.resize(static_cast<std::size_t>(k));
        out += G::basis(pick, random_polynomial(coords, max_degree, r.next(), chart.id()));
    }
    return out;
}

Chart property_chart() {
    Chart c;
    for (int i = 0; i < 5; ++i) c.add("q" + std::to_string(i), Role::Field);
    return c;
}

Rational sign_of(int exponent) { return Rational(exponent % 2 ? -1 : 1); }

class Count {
public:
    void add(const Form& f) { n_ += f.term_count(); }
    void add(const MultiVector& v) { n_ += v.term_count(); }
    std::size_t value() const { return n_; }

private:
    std::size_t n_ = 0;
};

}  // namespace

Form random_form(const Chart& chart, int k, std::uint64_t seed, int terms, int max_degree) {
    return random_graded<Form>(chart, k, seed, terms, max_degree);
}

MultiVector random_multivector(const Chart& chart, int k, std::uint64_t seed, int terms, int max_degree) {
    return random_graded<MultiVector>(chart, k, seed, terms, max_degree);
}

std::vector<CheckOutcome> engine_property_checks(std::uint64_t seed, int cases) {
    const Chart c = property_chart();
    Count dd, comm, assoc, deriv, pull, lie, sn_red, sn_anti, sn_leib, sn_jac, cartan;
    for (int t = 0; t < cases; ++t) {
        SplitMix64 r(seed * 7919u + static_cast<std::uint64_t>(t));
        auto deg = [&](long lo, long hi) { return static_cast<int>(r.uniform(lo, hi)); };
        const int ka = deg(0, 2), kb = deg(0, 2), kc = deg(0, 1);
        const Form a = random_form(c, ka, r.next()), b = random_form(c, kb, r.next()), g = random_form(c, kc, r.next());

        dd.add(exterior_derivative(c, exterior_derivative(c, random_form(c, deg(0, 3), r.next()))));
        comm.add(wedge(a, b) - wedge(b, a).scaled(sign_of(ka * kb)));
        assoc.add(wedge(wedge(a, b), g) - wedge(a, wedge(b, g)));

        const MultiVector v = random_multivector(c, 1, r.next());
        if (ka + kb > 0) {
            Form rhs(ka + kb - 1);
            if (ka > 0) rhs += wedge(interior_product(v, a), b);
            if (kb > 0) rhs += wedge(a, interior_product(v, b)).scaled(sign_of(ka));
            deriv.add(interior_product(v, wedge(a, b)) - rhs);
        }

        std::unordered_map<VarId, Poly> sigma;
        for (VarId q = 0; q < c.size(); ++q)
            if (r.uniform(0, 1)) sigma.emplace(q, random_polynomial({0, 1, 2, 3, 4}, 2, r.next(), c.id()));
        pull.add(pullback(c, sigma, exterior_derivative(c, a)) - exterior_derivative(c, pullback(c, sigma, a)));

        lie.add(lie_derivative(c, v, wedge(a, b)) -
                (wedge(lie_derivative(c, v, a), b) + wedge(a, lie_derivative(c, v, b))));

        const MultiVector w1 = random_multivector(c, 1, r.next());
        sn_red.add(schouten_nijenhuis(v, w1) - lie_bracket(v, w1));

        const int p = deg(1, 2), q = deg(1, 2), s = deg(1, 2);
        const MultiVector U = random_multivector(c, p, r.next()), V = random_multivector(c, q, r.next()),
                          W = random_multivector(c, s, r.next());
        sn_anti.add(schouten_nijenhuis(U, V) +
                    schouten_nijenhuis(V, U).scaled(sign_of((p - 1) * (q - 1))));
        sn_leib.add(schouten_nijenhuis(U, wedge(V, W)) -
                    (wedge(schouten_nijenhuis(U, V), W) +
                     wedge(V, schouten_nijenhuis(U, W)).scaled(sign_of((p - 1) * q))));
        const int d1 = p - 1, d2 = q - 1, d3 = s - 1;
        sn_jac.add(schouten_nijenhuis(U, schouten_nijenhuis(V, W)).scaled(sign_of(d1 * d3)) +
                   schouten_nijenhuis(W, schouten_nijenhuis(U, V)).scaled(sign_of(d2 * d3)) +
                   schouten_nijenhuis(V, schouten_nijenhuis(W, U)).scaled(sign_of(d1 * d2)));

        const std::vector<MultiVector> fields{v, w1, random_multivector(c, 1, r.next())};
        const Form om = random_form(c, deg(3, 4), r.next());
        cartan.add(exterior_derivative(c, interior_sequence(fields, om)) - rogers_expansion(c, fields, om));
    }
    const std::string k = " on " + std::to_string(cases) + " seeded cases";
    return {
        {"engine.d_squared", "d∘d = 0" + k, dd.value(), true, {}},
        {"engine.wedge_graded_commutativity", "a ∧ b = (-1)^{|a||b|} b ∧ a" + k, comm.value(), true, {}},
        {"engine.wedge_associativity", "(a ∧ b) ∧ c = a ∧ (b ∧ c)" + k, assoc.value(), true, {}},
        {"engine.interior_derivation", "v ⌟ (a ∧ b) = (v ⌟ a) ∧ b + (-1)^{|a|} a ∧ (v ⌟ b)" + k, deriv.value(), true,
         {}},
        {"engine.pullback_commutes_with_d", "pullback of da equals d of the pullback" + k, pull.value(), true, {}},
        {"engine.lie_derivative_derivation", "L_v (a ∧ b) = L_v a ∧ b + a ∧ L_v b" + k, lie.value(), true, {}},
        {"engine.schouten_reduces_to_lie", "bracket of vector fields equals the Lie bracket" + k, sn_red.value(),
         true, {}},
        {"engine.schouten_graded_antisymmetry", "[U, V] = -(-1)^{(p-1)(q-1)} [V, U]" + k, sn_anti.value(), true, {}},
        {"engine.schouten_graded_leibniz", "[U, V ∧ W] = [U, V] ∧ W + (-1)^{(p-1)q} V ∧ [U, W]" + k,
         sn_leib.value(), true, {}},
        {"engine.schouten_graded_jacobi", "graded Jacobi identity with signs (-1)^{d_i d_j}" + k, sn_jac.value(),
         true, {}},
        {"engine.interior_commutator_expansion", "d((v1 ∧ v2 ∧ v3) ⌟ w) commutator expansion" + k,
         cartan.value(), true, {}},
    };
}

}  // namespace dwv
