#include "dwv/extcalc.hpp"

#include <stdexcept>

namespace dwv {

namespace {

template <class Tag>
Graded<Tag> wedge_impl(const Graded<Tag>& a, const Graded<Tag>& b) {
    int deg = a.degree() + b.degree();
    GradedBuilder<Tag> out(deg);
    if (a.is_zero() || b.is_zero() || deg > Blade::kCapacity) return out.finish();
    for (const auto& [ba, pa] : a.terms())
        for (const auto& [bb, pb] : b.terms()) {
            Blade m;
            int s = merge_blades(ba, bb, m);
            if (s != 0) out.add_product(m, pa, pb, Rational(s));
        }
    return out.finish();
}

/// Sign of inserting v in front of blade b, and the resulting blade; 0 if v is in b.
int prepend(VarId v, const Blade& b, Blade& out) {
    int before = 0;
    for (int i = 0; i < b.size(); ++i) {
        if (b[i] == v) return 0;
        if (b[i] < v) ++before;
    }
    std::vector<VarId> vars = b.vars();
    vars.insert(vars.begin() + before, v);
    int dummy;
    out = Blade::sorted(std::move(vars), dummy);
    return before % 2 ? -1 : 1;
}

std::unordered_map<VarId, const Poly*> components(const MultiVector& v) {
    if (v.degree() != 1 && !v.is_zero()) throw std::invalid_argument("expected a vector field");
    std::unordered_map<VarId, const Poly*> c;
    for (const auto& [b, p] : v.terms()) c.emplace(b[0], &p);
    return c;
}

Form contract_vector(const std::unordered_map<VarId, const Poly*>& comp, const Form& a) {
    FormBuilder out(a.degree() - 1);
    if (a.degree() == 0) return out.finish();
    for (const auto& [b, p] : a.terms())
        for (int j = 0; j < b.size(); ++j) {
            auto it = comp.find(b[j]);
            if (it == comp.end()) continue;
            out.add_product(b.without(j), *it->second, p, Rational(j % 2 ? -1 : 1));
        }
    return out.finish();
}

/// Differentiates every coefficient by the coordinate i.
MultiVector coefficient_derivative(const MultiVector& v, VarId i) {
    MultiVector out(v.degree());
    for (const auto& [b, p] : v.terms()) out.add_term(b, p.derivative(i));
    return out;
}

}  // namespace

Form wedge(const Form& a, const Form& b) { return wedge_impl(a, b); }
MultiVector wedge(const MultiVector& a, const MultiVector& b) { return wedge_impl(a, b); }

Form exterior_derivative(const Chart& chart, const Form& a) {
    FormBuilder out(a.degree() + 1);
    for (const auto& [b, p] : a.terms())
        for (VarId v : p.variables()) {
            if (!chart.is_coordinate(v)) continue;
            Blade nb;
            int s = prepend(v, b, nb);
            if (s != 0) out.add(nb, p.derivative(v), Rational(s));
        }
    return out.finish();
}

Form interior_product(const MultiVector& x, const Form& a) {
    if (x.degree() == 1) return contract_vector(components(x), a);
    int deg = a.degree() - x.degree();
    FormBuilder out(deg < 0 ? 0 : deg);
    if (deg < 0) return out.finish();
    for (const auto& [bx, px] : x.terms())
        for (const auto& [ba, pa] : a.terms()) {
            Blade cur = ba;
            int sign = 1;
            for (int i = 0; i < bx.size() && sign != 0; ++i) {
                int pos = cur.position(bx[i]);
                if (pos < 0) { sign = 0; break; }
                if (pos % 2) sign = -sign;
                cur = cur.without(pos);
            }
            if (sign != 0) out.add_product(cur, px, pa, Rational(sign));
        }
    return out.finish();
}

Form interior_sequence(const std::vector<MultiVector>& factors, const Form& a) {
    Form cur = a;
    for (const auto& f : factors) {
        if (cur.degree() == 0) return Form(0);
        cur = contract_vector(components(f), cur);
    }
    return cur;
}

Poly apply_vector(const MultiVector& v, const Poly& f) {
    auto comp = components(v);
    PolyAccumulator acc;
    for (VarId var : f.variables()) {
        auto it = comp.find(var);
        if (it != comp.end()) acc.add_product(*it->second, f.derivative(var));
    }
    return acc.finish();
}

MultiVector lie_bracket(const MultiVector& v, const MultiVector& w) {
    if ((v.degree() != 1 && !v.is_zero()) || (w.degree() != 1 && !w.is_zero()))
        throw std::invalid_argument("lie_bracket expects vector fields");
    MultiVector out(1);
    for (const auto& [b, p] : w.terms()) out.add_term(b, apply_vector(v, p));
    for (const auto& [b, p] : v.terms()) out.add_term(b, -apply_vector(w, p));
    return out;
}

MultiVector schouten_nijenhuis(const MultiVector& u, const MultiVector& v) {
    // [P,Q] = sum_i (P <-d/dxi_i) ^ (d_i Q) - (-1)^((p-1)(q-1)) (Q <-d/dxi_i) ^ (d_i P),
    // with <-d/dxi_i the right derivative removing ∂_i from the basis blade.
    const int p = u.degree(), q = v.degree();
    const int deg = p + q - 1;
    GradedBuilder<VectorTag> out(deg < 0 ? 0 : deg);
    if (deg < 0 || u.is_zero() || v.is_zero()) return out.finish();
    auto half = [&out](const MultiVector& a, const MultiVector& b, const Rational& sign) {
        std::unordered_map<VarId, MultiVector> db;
        for (const auto& [ba, pa] : a.terms())
            for (int j = 0; j < ba.size(); ++j) {
                VarId i = ba[j];
                auto it = db.find(i);
                if (it == db.end()) it = db.emplace(i, coefficient_derivative(b, i)).first;
                if (it->second.is_zero()) continue;
                Blade reduced = ba.without(j);
                int rs = (ba.size() - 1 - j) % 2 ? -1 : 1;
                for (const auto& [bb, pb] : it->second.terms()) {
                    Blade m;
                    int s = merge_blades(reduced, bb, m);
                    if (s != 0) out.add_product(m, pa, pb, sign * Rational(rs * s));
                }
            }
    };
    half(u, v, Rational(1));
    half(v, u, Rational(((p - 1) * (q - 1)) % 2 ? 1 : -1));
    return out.finish();
}

Form lie_derivative(const Chart& chart, const MultiVector& v, const Form& a) {
    Form r = interior_product(v, exterior_derivative(chart, a));
    if (a.degree() > 0) r += exterior_derivative(chart, interior_product(v, a));
    return r;
}

Form pullback(const Chart& chart, const std::unordered_map<VarId, Poly>& sigma, const Form& a) {
    std::unordered_map<VarId, Form> dimage;
    auto image_1form = [&](VarId q) -> const Form& {
        auto it = dimage.find(q);
        if (it != dimage.end()) return it->second;
        auto s = sigma.find(q);
        Form f = s == sigma.end() ? Form::basis({q}) : exterior_derivative(chart, Form::scalar(s->second));
        if (f.is_zero()) f = Form(1);
        return dimage.emplace(q, std::move(f)).first->second;
    };
    Form out(a.degree());
    for (const auto& [b, p] : a.terms()) {
        Poly c = p.substitute(sigma);
        if (c.is_zero()) continue;
        Form term = Form::scalar(c);
        for (int i = 0; i < b.size() && !term.is_zero(); ++i) term = wedge(term, image_1form(b[i]));
        if (!term.is_zero()) out += term;
    }
    return out;
}

Form is_locally_hamiltonian(const Chart& chart, const MultiVector& xi, const Form& omega) {
    return exterior_derivative(chart, interior_product(xi, omega));
}

VolumeForms volume_forms(const Chart& chart) {
    const auto& x = chart.base();
    const int n = static_cast<int>(x.size());
    VolumeForms v;
    v.beta = Form::basis(x);
    for (int m = 0; m < n; ++m) {
        v.beta_mu.push_back(interior_product(MultiVector::basis({x[m]}), v.beta));
        v.beta_munu.emplace_back();
        for (int k = 0; k < n; ++k) v.beta_munu[m].push_back(beta_multi(chart, {m, k}));
    }
    return v;
}

Form beta_multi(const Chart& chart, const std::vector<int>& indices) {
    const auto& x = chart.base();
    Form cur = Form::basis(x);
    for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
        cur = interior_product(MultiVector::basis({x.at(static_cast<std::size_t>(*it))}), cur);
        if (cur.is_zero()) return Form(static_cast<int>(x.size() - indices.size()));
    }
    return cur;
}

}  // namespace dwv
