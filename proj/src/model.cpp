#include "dwv/model.hpp"

#include <stdexcept>
#include <string>

namespace dwv {

namespace {

std::string idx(std::initializer_list<int> is) {
    std::string s;
    for (int i : is) s += std::to_string(i);
    return s;
}

}  // namespace

std::shared_ptr<const Model> Model::build(int n) {
    if (n != 3 && n != 4) throw std::invalid_argument("model dimension must be 3 or 4");
    auto m = std::make_shared<Model>();
    m->n_ = n;
    m->h_ = InternalMetric::lorentzian(n);
    Chart& c = m->chart_;
    const int np = n * (n - 1) / 2;

    m->pair_index_.assign(static_cast<std::size_t>(n * n), -1);
    for (int I = 0; I < n; ++I)
        for (int J = I + 1; J < n; ++J) {
            m->pair_index_[I * n + J] = static_cast<int>(m->pair_I_.size());
            m->pair_I_.push_back(I);
            m->pair_J_.push_back(J);
        }
    auto pname = [&](int p) { return idx({m->pair_I_[p], m->pair_J_[p]}); };

    for (int mu = 0; mu < n; ++mu) m->x_.push_back(c.add("x" + idx({mu}), Role::Base));
    for (int I = 0; I < n; ++I)
        for (int mu = 0; mu < n; ++mu) m->e_.push_back(c.add("e" + idx({I, mu}), Role::Field));
    for (int p = 0; p < np; ++p)
        for (int mu = 0; mu < n; ++mu) m->w_.push_back(c.add("w" + pname(p) + "_" + idx({mu}), Role::Field));
    m->kappa_ = c.add("kappa", Role::Energy);
    for (int I = 0; I < n; ++I)
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu)
                m->pe_.push_back(c.add("pe" + idx({I, mu, nu}), Role::Momentum));
    for (int p = 0; p < np; ++p)
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu)
                m->pw_.push_back(c.add("pw" + pname(p) + "_" + idx({mu, nu}), Role::Momentum));

    auto formal3 = [&](const std::string& stem, int outer, std::vector<VarId>& out, bool pairs) {
        for (int a = 0; a < outer; ++a)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    out.push_back(c.add(stem + (pairs ? pname(a) : idx({a})) + "_" + idx({i, j}), Role::Formal));
    };
    formal3("Te", n, m->te_, false);
    formal3("Tw", np, m->tw_, true);
    for (int nu = 0; nu < n; ++nu) m->ups_.push_back(c.add("U" + idx({nu}), Role::Formal));
    formal3("ve", n, m->ve_, false);
    formal3("vw", np, m->vw_, true);
    formal3("le", n, m->le_, false);
    formal3("lw", np, m->lw_, true);

    m->vol_ = volume_forms(c);
    PMatrix e(static_cast<std::size_t>(n), std::vector<Poly>(static_cast<std::size_t>(n)));
    for (int I = 0; I < n; ++I)
        for (int mu = 0; mu < n; ++mu) e[I][mu] = m->E(I, mu);
    m->density_ = density_pair(e);
    return m;
}

Form Model::dW(int I, int J, int mu) const {
    if (I == J) return Form(1);
    return Form::basis({w(stored(I, J), mu)}, Poly(pair_sign(I, J)));
}

Form Model::dPW(int I, int J, int mu, int nu) const {
    if (I == J) return Form(1);
    return Form::basis({pw(stored(I, J), mu, nu)}, Poly(pair_sign(I, J)));
}

MultiVector Model::Dw(int I, int J, int mu) const {
    if (I == J) return MultiVector(1);
    return MultiVector::basis({w(stored(I, J), mu)}, Poly(pair_sign(I, J)));
}

MultiVector Model::Dpw(int I, int J, int mu, int nu) const {
    if (I == J) return MultiVector(1);
    return MultiVector::basis({pw(stored(I, J), mu, nu)}, Poly(pair_sign(I, J)));
}

}  // namespace dwv
