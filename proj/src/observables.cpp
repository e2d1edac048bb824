#include "dwv/observables.hpp"

#include <stdexcept>

namespace dwv {

namespace {

Rational half() { return Rational(1, 2); }

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    SplitMix64 r(seed ^ (a * 0x9E3779B97F4A7C15ULL) ^ ((b + 1) * 0xC2B2AE3D27D4EB4FULL));
    return r.next();
}

std::vector<VarId> x_vars(const Model& m) {
    std::vector<VarId> v;
    for (int mu = 0; mu < m.n(); ++mu) v.push_back(m.x(mu));
    return v;
}

Poly dx(const Model& m, const Poly& f, int mu) { return f.derivative(m.x(mu)); }
const Form& bn(const Model& m, int nu) { return m.vol().beta_mu[nu]; }
const Form& bmn(const Model& m, int a, int b) { return m.vol().beta_munu[a][b]; }
Form dform(const Model& m, const Form& f) { return exterior_derivative(m.chart(), f); }

/// Displayed derivatives along omega and p^omega: half the signed stored derivative, summed over ordered pairs.
MultiVector half_dw(const Model& m, int I, int J, int mu) { return m.Dw(I, J, mu).scaled(half()); }
MultiVector half_dpw(const Model& m, int I, int J, int mu, int nu) { return m.Dpw(I, J, mu, nu).scaled(half()); }

template <class F>
void ordered_pairs(const Model& m, F&& f) {
    for (int I = 0; I < m.n(); ++I)
        for (int J = 0; J < m.n(); ++J)
            if (I != J) f(I, J);
}

std::size_t coeff_count(const Model& m, ObservableKind k) {
    const std::size_t n = static_cast<std::size_t>(m.n()), p = static_cast<std::size_t>(m.pairs());
    switch (k) {
        case ObservableKind::Qe: return n * n * n;
        case ObservableKind::Qw: return p * n * n;
        case ObservableKind::Pe: return n * n;
        case ObservableKind::Pw: return p * n;
        case ObservableKind::Pkappa:
        case ObservableKind::PkappaComplete: return n;
        default: return 0;
    }
}

void require_coeff(const Model& m, const ObservableSpec& s) {
    if (s.coeff.size() != coeff_count(m, s.kind)) throw std::invalid_argument("observable coefficients missing");
    const bool pair_kind = s.kind == ObservableKind::Cw || s.kind == ObservableKind::PiIJ;
    if (pair_kind && s.I == s.J) throw std::invalid_argument("pair observable needs I != J");
}

// Coefficient accessors; pair-indexed ones extend antisymmetrically.
const Poly& chi(const Model& m, const ObservableSpec& s, int I, int mu, int nu) {
    return s.coeff[static_cast<std::size_t>((I * m.n() + mu) * m.n() + nu)];
}
Poly psi(const Model& m, const ObservableSpec& s, int I, int J, int mu, int nu) {
    if (I == J) return Poly();
    const Poly& c = s.coeff[static_cast<std::size_t>((m.stored(I, J) * m.n() + mu) * m.n() + nu)];
    return I < J ? c : -c;
}
const Poly& zeta(const Model& m, const ObservableSpec& s, int I, int mu) {
    return s.coeff[static_cast<std::size_t>(I * m.n() + mu)];
}
Poly phi(const Model& m, const ObservableSpec& s, int I, int J, int mu) {
    if (I == J) return Poly();
    const Poly& c = s.coeff[static_cast<std::size_t>(m.stored(I, J) * m.n() + mu)];
    return I < J ? c : -c;
}

Poly divergence(const Model& m, const std::vector<Poly>& X) {
    Poly d;
    for (int l = 0; l < m.n(); ++l) d += dx(m, X[static_cast<std::size_t>(l)], l);
    return d;
}

Form pkappa_form(const Model& m, const ObservableSpec& s, bool complete) {
    const int n = m.n();
    Form f(n - 1);
    for (int a = 0; a < n; ++a) f += (m.K() * s.coeff[a]) * bn(m, a);
    for (int a = 0; a < n; ++a)
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu) {
                ordered_pairs(m, [&](int I, int J) {
                    f -= (m.PW(I, J, mu, nu) * s.coeff[a]) * wedge(m.dW(I, J, mu), bmn(m, a, nu));
                });
                if (complete)
                    for (int I = 0; I < n; ++I)
                        f -= (m.PE(I, mu, nu) * s.coeff[a]) * wedge(m.dE(I, mu), bmn(m, a, nu));
            }
    return f;
}

MultiVector pkappa_field(const Model& m, const ObservableSpec& s, bool complete) {
    const int n = m.n();
    const Poly div = divergence(m, s.coeff);
    MultiVector v(1);
    for (int a = 0; a < n; ++a) v += s.coeff[a] * m.Dx(a);
    v -= (m.K() * div) * m.Dk();
    for (int mu = 0; mu < n; ++mu)
        for (int sg = 0; sg < n; ++sg)
            for (int nu = 0; nu < n; ++nu) {
                Poly g = dx(m, s.coeff[nu], sg);
                if (nu == sg) g -= div;
                if (g.is_zero()) continue;
                ordered_pairs(m, [&](int I, int J) { v += (m.PW(I, J, mu, sg) * g) * half_dpw(m, I, J, mu, nu); });
                if (complete)
                    for (int I = 0; I < n; ++I) v += (m.PE(I, mu, sg) * g) * m.Dpe(I, mu, nu);
            }
    return v;
}

PMatrix frame_matrix(const Model& m) {
    PMatrix e(static_cast<std::size_t>(m.n()), std::vector<Poly>(static_cast<std::size_t>(m.n())));
    for (int I = 0; I < m.n(); ++I)
        for (int mu = 0; mu < m.n(); ++mu) e[I][mu] = m.E(I, mu);
    return e;
}

/// det e and its cofactors adj[rho][K] = d det / d e^K_rho = det e^rho_K.
struct Adjugate {
    Poly det;
    PMatrix adj;
};
Adjugate adjugate(const Model& m) {
    Adjugate a{vielbein_determinant(frame_matrix(m), DeterminantMode::Cofactor), {}};
    a.adj.assign(static_cast<std::size_t>(m.n()), std::vector<Poly>(static_cast<std::size_t>(m.n())));
    for (int r = 0; r < m.n(); ++r)
        for (int K = 0; K < m.n(); ++K) a.adj[r][K] = a.det.derivative(m.e(K, r));
    return a;
}

/// Calls f(I, J, K, L, sign) for the nonzero epsilon_{IJKL} in four dimensions.
template <class F>
void eps4(const Model& m, F&& f) {
    for_each_permutation(m.n(), [&](const IndexTuple& t, int s) { f(t[0], t[1], t[2], t[3], s); });
}

CheckOutcome reported(CheckOutcome c) {
    c.assertive = false;
    return c;
}

/// Passes iff the form is nonzero (negative controls).
CheckOutcome expect_nonzero(std::string id, std::string label, const Form& f) {
    return {std::move(id), std::move(label), f.is_zero() ? std::size_t{1} : std::size_t{0}, true,
            f.is_zero() ? "unexpectedly zero" : ""};
}

/// Accumulates residual term counts of one check over trials.
struct Tally {
    Tally(std::string i, std::string l, bool a = true) : id(std::move(i)), label(std::move(l)), assertive(a) {}
    std::string id, label;
    std::size_t terms = 0;
    bool assertive;
    std::string detail;
    void add(const Form& f) { terms += f.term_count(); }
    void add(std::size_t t) { terms += t; }
    void take(const CheckOutcome& c) {
        terms += c.residual_terms;
        if (detail.empty()) detail = c.detail;
    }
    CheckOutcome done() const { return {id, label, terms, assertive, detail}; }
};

std::string tag_of(const Model& m) { return m.n() == 3 ? "n3" : "n4"; }

const std::vector<ObservableKind>& lemma_kinds() {
    static const std::vector<ObservableKind> k{ObservableKind::Qe, ObservableKind::Qw, ObservableKind::Pe,
                                               ObservableKind::Pw};
    return k;
}

/// Hamiltonian pool for the property checks: the lemma observables, the constraint forms, and
/// P_kappa completed by its frame-momentum terms (the displayed P_kappa is not Hamiltonian on
/// the full chart).
std::vector<HamiltonianPair> hamiltonian_pool(const PalatiniContext& ctx, std::uint64_t seed, bool displayed_pkappa) {
    const Model& m = ctx.model();
    std::vector<HamiltonianPair> pool;
    const std::vector<ObservableKind> kinds{ObservableKind::Qe,
                                           ObservableKind::Qw,
                                           ObservableKind::Pe,
                                           ObservableKind::Pw,
                                           displayed_pkappa ? ObservableKind::Pkappa : ObservableKind::PkappaComplete,
                                           ObservableKind::Ce,
                                           ObservableKind::Cw};
    for (std::size_t i = 0; i < kinds.size(); ++i)
        pool.push_back(make_pair(ctx, random_observable(m, kinds[i], mix(seed, 11, i)), Surface::FullDW));
    return pool;
}

constexpr std::size_t kPkappaSlot = 4;

/// The pool of the same seed with the displayed P_kappa in its slot.
std::vector<HamiltonianPair> with_displayed_pkappa(const PalatiniContext& ctx, std::vector<HamiltonianPair> pool,
                                                   std::uint64_t seed) {
    pool[kPkappaSlot] = make_pair(
        ctx, random_observable(ctx.model(), ObservableKind::Pkappa, mix(seed, 11, kPkappaSlot)), Surface::FullDW);
    return pool;
}

}  // namespace

const char* to_string(ObservableKind k) {
    switch (k) {
        case ObservableKind::Qe: return "Qe";
        case ObservableKind::Qw: return "Qw";
        case ObservableKind::Pe: return "Pe";
        case ObservableKind::Pw: return "Pw";
        case ObservableKind::Pkappa: return "Pkappa";
        case ObservableKind::PkappaComplete: return "PkappaComplete";
        case ObservableKind::Ce: return "Ce";
        case ObservableKind::Cw: return "Cw";
        case ObservableKind::PiI: return "PiI";
        case ObservableKind::PiIJ: return "PiIJ";
    }
    return "?";
}

ObservableSpec random_observable(const Model& m, ObservableKind kind, std::uint64_t seed, int degree) {
    const int n = m.n();
    ObservableSpec s;
    s.kind = kind;
    const std::vector<VarId> xs = x_vars(m);
    const std::size_t count = coeff_count(m, kind);
    s.coeff.resize(count);
    for (std::size_t i = 0; i < count; ++i) s.coeff[i] = random_polynomial(xs, degree, mix(seed, 1, i), m.chart().id());
    if (kind == ObservableKind::Qw) {
        for (int p = 0; p < m.pairs(); ++p)
            for (int mu = 0; mu < n; ++mu)
                for (int nu = 0; nu <= mu; ++nu) {
                    auto at = [&](int a, int b) -> Poly& { return s.coeff[static_cast<std::size_t>((p * n + a) * n + b)]; };
                    if (nu == mu) at(mu, mu) = Poly();
                    else at(mu, nu) = -at(nu, mu);
                }
    }
    SplitMix64 r(mix(seed, 2));
    s.I = static_cast<int>(r.uniform(0, n - 1));
    s.J = static_cast<int>(r.uniform(0, n - 2));
    if (s.J >= s.I) ++s.J;
    s.mu = static_cast<int>(r.uniform(0, n - 1));
    return s;
}

Form make_observable(const PalatiniContext& ctx, const ObservableSpec& s, Surface surface) {
    const Model& m = ctx.model();
    require_coeff(m, s);
    const int n = m.n();
    Form f(n - 1);
    switch (s.kind) {
        case ObservableKind::Qe:
            for (int I = 0; I < n; ++I)
                for (int mu = 0; mu < n; ++mu)
                    for (int nu = 0; nu < n; ++nu) f += (chi(m, s, I, mu, nu) * m.E(I, mu)) * bn(m, nu);
            break;
        case ObservableKind::Qw:
            for (int mu = 0; mu < n; ++mu)
                for (int nu = 0; nu < n; ++nu)
                    ordered_pairs(m, [&](int I, int J) { f += (psi(m, s, I, J, mu, nu) * m.W(I, J, mu)) * bn(m, nu); });
            break;
        case ObservableKind::Pe:
            for (int I = 0; I < n; ++I)
                for (int mu = 0; mu < n; ++mu)
                    for (int nu = 0; nu < n; ++nu) f += (zeta(m, s, I, mu) * m.PE(I, mu, nu)) * bn(m, nu);
            break;
        case ObservableKind::Pw:
            for (int mu = 0; mu < n; ++mu)
                for (int nu = 0; nu < n; ++nu)
                    ordered_pairs(m, [&](int I, int J) { f += (phi(m, s, I, J, mu) * m.PW(I, J, mu, nu)) * bn(m, nu); });
            break;
        case ObservableKind::Pkappa: f = pkappa_form(m, s, false); break;
        case ObservableKind::PkappaComplete: f = pkappa_form(m, s, true); break;
        case ObservableKind::Ce:
            for (int nu = 0; nu < n; ++nu) f += m.PE(s.I, s.mu, nu) * bn(m, nu);
            break;
        case ObservableKind::Cw:
            for (int nu = 0; nu < n; ++nu)
                f += (m.PW(s.I, s.J, s.mu, nu) + m.density(s.I, s.J, s.mu, nu)) * bn(m, nu);
            break;
        case ObservableKind::PiI: f = varpi_e(m, s.I); break;
        case ObservableKind::PiIJ: f = varpi_w(m, s.I, s.J); break;
    }
    if (surface == Surface::Constraint) f = pullback(m.chart(), ctx.constraint(), f);
    return f;
}

HamiltonianPair make_pair(const PalatiniContext& ctx, const ObservableSpec& s, Surface surface) {
    const Model& m = ctx.model();
    require_coeff(m, s);
    const int n = m.n();
    HamiltonianPair hp{to_string(s.kind), make_observable(ctx, s, surface), MultiVector(1), Poly(1)};
    MultiVector& v = hp.field;
    const bool dw = surface == Surface::FullDW;
    switch (s.kind) {
        case ObservableKind::Qe:
            // -e ∂_nu chi ∂_kappa - chi ∂/∂p^e on the full chart; the constraint lemma displays +chi.
            for (int I = 0; I < n; ++I)
                for (int mu = 0; mu < n; ++mu)
                    for (int nu = 0; nu < n; ++nu) {
                        const Poly& c = chi(m, s, I, mu, nu);
                        v -= (m.E(I, mu) * dx(m, c, nu)) * m.Dk();
                        v += (dw ? -c : c) * m.Dpe(I, mu, nu);
                    }
            break;
        case ObservableKind::Qw:
            if (dw) {
                for (int mu = 0; mu < n; ++mu)
                    for (int nu = 0; nu < n; ++nu)
                        ordered_pairs(m, [&](int I, int J) {
                            const Poly c = psi(m, s, I, J, mu, nu);
                            v -= (m.W(I, J, mu) * dx(m, c, nu)) * m.Dk();
                            v -= c * half_dpw(m, I, J, mu, nu);
                        });
            } else {
                if (n != 4) throw std::invalid_argument("constraint-surface Qw field is defined for n = 4");
                // ∂/∂p^omega -> -(1/6) eps^{IJKL} eps_{mu nu rho sigma} e^rho_K ∂/∂e^L_sigma, times det e.
                const Adjugate a = adjugate(m);
                hp.scale = a.det;
                for (int mu = 0; mu < n; ++mu)
                    for (int nu = 0; nu < n; ++nu)
                        ordered_pairs(m, [&](int I, int J) {
                            v -= (a.det * m.W(I, J, mu) * dx(m, psi(m, s, I, J, mu, nu), nu)) * m.Dk();
                        });
                eps4(m, [&](int I, int J, int K, int L, int si) {
                    eps4(m, [&](int mu, int nu, int rho, int sg, int sx) {
                        const Poly c = psi(m, s, I, J, mu, nu) * a.adj[rho][K];
                        v += c.scaled(Rational(-si * sx, 6)) * m.De(L, sg);
                    });
                });
            }
            break;
        case ObservableKind::Pe:
            for (int I = 0; I < n; ++I)
                for (int mu = 0; mu < n; ++mu) {
                    const Poly& z = zeta(m, s, I, mu);
                    v += z * m.De(I, mu);
                    if (dw)
                        for (int nu = 0; nu < n; ++nu) v -= (m.PE(I, mu, nu) * dx(m, z, nu)) * m.Dk();
                }
            break;
        case ObservableKind::Pw:
            for (int mu = 0; mu < n; ++mu)
                ordered_pairs(m, [&](int I, int J) {
                    const Poly f = phi(m, s, I, J, mu);
                    v += f * half_dw(m, I, J, mu);
                    for (int nu = 0; nu < n; ++nu) {
                        // p^omega restricts to -E on the constraint surface.
                        const Poly p = dw ? m.PW(I, J, mu, nu) : -m.density(I, J, mu, nu);
                        v -= (p * dx(m, f, nu)) * m.Dk();
                    }
                });
            break;
        case ObservableKind::Pkappa:
        case ObservableKind::PkappaComplete:
            if (!dw) throw std::invalid_argument("Pkappa is defined on the full chart");
            v = pkappa_field(m, s, s.kind == ObservableKind::PkappaComplete);
            break;
        case ObservableKind::Ce:
            if (!dw) throw std::invalid_argument("constraint forms are defined on the full chart");
            v = m.De(s.I, s.mu);
            hp.name = "Ce";
            break;
        case ObservableKind::Cw:
            if (!dw) throw std::invalid_argument("constraint forms are defined on the full chart");
            v = half_dw(m, s.I, s.J, s.mu);
            for (int L = 0; L < n; ++L)
                for (int sg = 0; sg < n; ++sg)
                    for (int nu = 0; nu < n; ++nu)
                        v -= m.density(s.I, s.J, s.mu, nu).derivative(m.e(L, sg)) * m.Dpe(L, sg, nu);
            break;
        case ObservableKind::PiI:
        case ObservableKind::PiIJ: throw std::invalid_argument("canonical (n-2)-forms carry no Hamiltonian field");
    }
    return hp;
}

Form verify_pair(const Chart& chart, const HamiltonianPair& p, const Form& omega) {
    return interior_product(p.field, omega) + p.scale * exterior_derivative(chart, p.form);
}

Form bracket(const HamiltonianPair& a, const HamiltonianPair& b, const Form& omega) {
    if (!(a.scale == Poly(1)) || !(b.scale == Poly(1))) throw std::invalid_argument("bracket needs unscaled pairs");
    return interior_sequence({a.field, b.field}, omega);
}

Form bracket_via_first(const Chart& chart, const HamiltonianPair& a, const HamiltonianPair& b) {
    return interior_product(a.field, exterior_derivative(chart, b.form));
}

Form bracket_via_second(const Chart& chart, const HamiltonianPair& a, const HamiltonianPair& b) {
    return -interior_product(b.field, exterior_derivative(chart, a.form));
}

Form outer_bracket(const Chart& chart, const Form& x, const HamiltonianPair& c) {
    return -interior_product(c.field, exterior_derivative(chart, x));
}

HomotopyReport homotopy(const Chart& chart, const HamiltonianPair& a, const HamiltonianPair& b,
                        const HamiltonianPair& c, const Form& omega) {
    HomotopyReport r;
    r.cyclic_sum = outer_bracket(chart, bracket(b, c, omega), a) + outer_bracket(chart, bracket(c, a, omega), b) +
                   outer_bracket(chart, bracket(a, b, omega), c);
    r.S = interior_sequence({a.field, b.field, c.field}, omega);
    r.defect = r.cyclic_sum - exterior_derivative(chart, r.S);
    return r;
}

Form rogers_expansion(const Chart& chart, const std::vector<MultiVector>& fields, const Form& omega) {
    const int m = static_cast<int>(fields.size());
    Form out(omega.degree() + 1 - m);
    auto without = [&](int i, int j) {
        std::vector<MultiVector> rest;
        for (int k = 0; k < m; ++k)
            if (k != i && k != j) rest.push_back(fields[static_cast<std::size_t>(k)]);
        return rest;
    };
    // Zero-based i, j: (-1)^{m + (i+1) + (j+1)} = (-1)^{m + i + j}.
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            std::vector<MultiVector> seq{lie_bracket(fields[static_cast<std::size_t>(i)], fields[static_cast<std::size_t>(j)])};
            for (auto& r : without(i, j)) seq.push_back(std::move(r));
            out += interior_sequence(seq, omega).scaled(Rational((m + i + j) % 2 ? -1 : 1));
        }
    // (-1)^{(i+1) + m} rest_i ⌟ L_{v_i} omega, and (-1)^m v ⌟ d omega.
    for (int i = 0; i < m; ++i)
        out += interior_sequence(without(i, -1), lie_derivative(chart, fields[static_cast<std::size_t>(i)], omega))
                   .scaled(Rational((i + 1 + m) % 2 ? -1 : 1));
    out += interior_sequence(fields, exterior_derivative(chart, omega)).scaled(Rational(m % 2 ? -1 : 1));
    return out;
}

Form rogers_uniform_sign(const std::vector<MultiVector>& fields, const Form& omega) {
    const int m = static_cast<int>(fields.size());
    Form out(omega.degree() + 1 - m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            std::vector<MultiVector> seq{lie_bracket(fields[static_cast<std::size_t>(i)], fields[static_cast<std::size_t>(j)])};
            for (int k = 0; k < m; ++k)
                if (k != i && k != j) seq.push_back(fields[static_cast<std::size_t>(k)]);
            out += interior_sequence(seq, omega);
        }
    return out.scaled(Rational(m % 2 ? -1 : 1));
}

Form varpi_e(const Model& m, int I) {
    Form f(m.n() - 2);
    for (int mu = 0; mu < m.n(); ++mu)
        for (int nu = 0; nu < m.n(); ++nu) f += m.PE(I, mu, nu).scaled(half()) * bmn(m, mu, nu);
    return f;
}

Form varpi_w(const Model& m, int I, int J) {
    Form f(m.n() - 2);
    for (int mu = 0; mu < m.n(); ++mu)
        for (int nu = 0; nu < m.n(); ++nu) f += m.PW(I, J, mu, nu).scaled(half()) * bmn(m, mu, nu);
    return f;
}

Form varpi_decomposition(const Model& m) {
    const int n = m.n();
    Form out = wedge(m.dK(), m.vol().beta);
    auto one_form = [&](auto&& coeff) {
        Form f(1);
        for (int r = 0; r < n; ++r) f += coeff(r) * m.dX(r);
        return f;
    };
    for (int I = 0; I < n; ++I) {
        Form e = one_form([&](int r) { return m.E(I, r); });
        out += wedge(dform(m, e), dform(m, varpi_e(m, I)));
    }
    ordered_pairs(m, [&](int I, int J) {
        Form w = one_form([&](int r) { return m.W(I, J, r); });
        out += wedge(dform(m, w), dform(m, varpi_w(m, I, J)));
    });
    return out;
}

SymplectomorphismData random_symplectomorphism(const Model& m, std::uint64_t seed, int degree) {
    const int n = m.n();
    const std::vector<VarId> xs = x_vars(m);
    const std::uint32_t cid = m.chart().id();
    std::uint64_t k = 0;
    auto polys = [&](std::size_t count) {
        std::vector<Poly> v;
        for (std::size_t i = 0; i < count; ++i) v.push_back(random_polynomial(xs, degree, mix(seed, 3, k++), cid));
        return v;
    };
    SymplectomorphismData d;
    d.X = polys(static_cast<std::size_t>(n));
    d.theta_e = polys(static_cast<std::size_t>(n * n));
    d.theta_w = polys(static_cast<std::size_t>(m.pairs() * n));
    d.ups_e = polys(static_cast<std::size_t>(n * n * n));
    d.ups_w = polys(static_cast<std::size_t>(m.pairs() * n * n));
    // Upsilon = f(x) + e^I_mu ∂_nu Upsilon^e + 2 omega_stored ∂_nu Upsilon^omega_stored.
    d.ups = random_polynomial(xs, degree, mix(seed, 4), cid);
    for (int I = 0; I < n; ++I)
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu)
                d.ups += m.E(I, mu) * dx(m, d.ups_e[static_cast<std::size_t>((I * n + mu) * n + nu)], nu);
    for (int p = 0; p < m.pairs(); ++p)
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu)
                d.ups += (m.var(m.w(p, mu)) * dx(m, d.ups_w[static_cast<std::size_t>((p * n + mu) * n + nu)], nu))
                             .scaled(Rational(2));
    return d;
}

MultiVector symplectomorphism_field(const PalatiniContext& ctx, const SymplectomorphismData& d) {
    const Model& m = ctx.model();
    const int n = m.n();
    auto te = [&](int I, int mu) { return d.theta_e[static_cast<std::size_t>(I * n + mu)]; };
    auto tw = [&](int I, int J, int mu) {
        if (I == J) return Poly();
        const Poly& c = d.theta_w[static_cast<std::size_t>(m.stored(I, J) * n + mu)];
        return I < J ? c : -c;
    };
    auto uw = [&](int I, int J, int mu, int nu) {
        if (I == J) return Poly();
        const Poly& c = d.ups_w[static_cast<std::size_t>((m.stored(I, J) * n + mu) * n + nu)];
        return I < J ? c : -c;
    };
    const Poly div = divergence(m, d.X);
    MultiVector v = d.ups * m.Dk();
    for (int I = 0; I < n; ++I)
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu) v += d.ups_e[static_cast<std::size_t>((I * n + mu) * n + nu)] * m.Dpe(I, mu, nu);
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu)
            ordered_pairs(m, [&](int I, int J) { v += uw(I, J, mu, nu) * half_dpw(m, I, J, mu, nu); });

    for (int a = 0; a < n; ++a) v += d.X[static_cast<std::size_t>(a)] * m.Dx(a);
    for (int I = 0; I < n; ++I)
        for (int mu = 0; mu < n; ++mu) v += te(I, mu) * m.De(I, mu);
    for (int mu = 0; mu < n; ++mu) ordered_pairs(m, [&](int I, int J) { v += tw(I, J, mu) * half_dw(m, I, J, mu); });
    Poly k = m.K() * div;
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
            ordered_pairs(m, [&](int I, int J) { k += dx(m, tw(I, J, mu), nu) * m.PW(I, J, mu, nu); });
            for (int I = 0; I < n; ++I) k += dx(m, te(I, mu), nu) * m.PE(I, mu, nu);
        }
    v -= k * m.Dk();
    // X and Theta depend on x only, so the display's Theta- and kappa-derivative terms vanish.
    for (int mu = 0; mu < n; ++mu)
        for (int sg = 0; sg < n; ++sg)
            for (int nu = 0; nu < n; ++nu) {
                Poly g = dx(m, d.X[static_cast<std::size_t>(nu)], sg);
                if (nu == sg) g -= div;
                if (g.is_zero()) continue;
                for (int I = 0; I < n; ++I) v += (m.PE(I, mu, sg) * g) * m.Dpe(I, mu, nu);
                ordered_pairs(m, [&](int I, int J) { v += (m.PW(I, J, mu, sg) * g) * half_dpw(m, I, J, mu, nu); });
            }
    return v;
}

std::size_t symplectomorphism_condition_terms(const Model& m, const SymplectomorphismData& d) {
    const int n = m.n();
    std::size_t t = 0;
    for (int I = 0; I < n; ++I)
        for (int mu = 0; mu < n; ++mu) {
            Poly r = d.ups.derivative(m.e(I, mu));
            for (int nu = 0; nu < n; ++nu) r -= dx(m, d.ups_e[static_cast<std::size_t>((I * n + mu) * n + nu)], nu);
            t += r.size();
        }
    for (int p = 0; p < m.pairs(); ++p)
        for (int mu = 0; mu < n; ++mu) {
            // Half the stored derivative: the displayed ∂/∂omega counts each unordered pair once.
            Poly r = d.ups.derivative(m.w(p, mu)).scaled(half());
            for (int nu = 0; nu < n; ++nu) r -= dx(m, d.ups_w[static_cast<std::size_t>((p * n + mu) * n + nu)], nu);
            t += r.size();
        }
    return t;
}

// ---------------------------------------------------------------------------------------------
// Suites

std::vector<CheckOutcome> observable_checks(const PalatiniContext& ctx, std::uint64_t seed, int trials) {
    const Model& m = ctx.model();
    const Chart& ch = m.chart();
    const int n = m.n();
    const std::string pre = "observables." + tag_of(m) + ".";
    const Form& wdw = ctx.omega_dw();
    const Form& wpal = ctx.omega_palatini();
    std::vector<CheckOutcome> out;

    std::vector<Tally> dw_pairs, c_pairs;
    for (ObservableKind k : lemma_kinds()) {
        dw_pairs.push_back({pre + "dw_pair." + to_string(k), std::string("Hamiltonian pair on the full chart: ") + to_string(k)});
        if (k != ObservableKind::Qw || n == 4)
            c_pairs.push_back({pre + "constraint_pair." + to_string(k),
                               std::string("Hamiltonian pair on the constraint surface: ") + to_string(k)});
    }
    Tally qw_single{pre + "constraint_pair.Qw_single_pair", "constraint-surface Qw pair with psi on one internal pair"};
    Tally pk{pre + "dw_pair.Pkappa", "Hamiltonian pair on the full chart: Pkappa"};
    Tally pk_full{pre + "dw_pair.Pkappa_with_frame_momenta",
                  "Pkappa completed by frame-momentum terms in form and field", false};
    Tally local{pre + "locally_hamiltonian", "lemma fields and the completed Pkappa field are locally Hamiltonian"};
    Tally pk_local{pre + "dw_pair.Pkappa_locally_hamiltonian", "displayed Pkappa field is locally Hamiltonian"};
    Tally dqw{pre + "d_Qw_display", "exterior derivative of Qw matches its expansion"};
    Tally pw_c{pre + "constraint_Pw_form_display", "pulled-back Pw equals -phi E beta_nu"};

    for (int t = 0; t < trials; ++t) {
        std::size_t ci = 0;
        for (std::size_t i = 0; i < lemma_kinds().size(); ++i) {
            ObservableKind k = lemma_kinds()[i];
            ObservableSpec s = random_observable(m, k, mix(seed, 100 + t, i));
            HamiltonianPair p = make_pair(ctx, s, Surface::FullDW);
            dw_pairs[i].add(verify_pair(ch, p, wdw));
            local.add(is_locally_hamiltonian(ch, p.field, wdw));
            if (k != ObservableKind::Qw || n == 4) {
                c_pairs[ci++].add(verify_pair(ch, make_pair(ctx, s, Surface::Constraint), wpal));
            }
            if (k == ObservableKind::Qw) {
                Form disp(n);
                for (int mu = 0; mu < n; ++mu)
                    for (int nu = 0; nu < n; ++nu)
                        ordered_pairs(m, [&](int I, int J) {
                            const Poly c = psi(m, s, I, J, mu, nu);
                            disp += (m.W(I, J, mu) * dx(m, c, nu)) * m.vol().beta;
                            disp += c * wedge(m.dW(I, J, mu), bn(m, nu));
                        });
                dqw.add(dform(m, p.form) - disp);
                if (n == 4) {
                    ObservableSpec one = s;
                    for (int q = 1; q < m.pairs(); ++q)
                        for (int a = 0; a < n * n; ++a) one.coeff[static_cast<std::size_t>(q * n * n + a)] = Poly();
                    qw_single.add(verify_pair(ch, make_pair(ctx, one, Surface::Constraint), wpal));
                }
            }
            if (k == ObservableKind::Pw) {
                Form disp(n - 1);
                for (int mu = 0; mu < n; ++mu)
                    for (int nu = 0; nu < n; ++nu)
                        ordered_pairs(m, [&](int I, int J) { disp -= (phi(m, s, I, J, mu) * m.density(I, J, mu, nu)) * bn(m, nu); });
                pw_c.add(make_observable(ctx, s, Surface::Constraint) - disp);
            }
        }
        ObservableSpec x = random_observable(m, ObservableKind::Pkappa, mix(seed, 200 + t));
        HamiltonianPair p = make_pair(ctx, x, Surface::FullDW);
        pk.add(verify_pair(ch, p, wdw));
        pk_local.add(is_locally_hamiltonian(ch, p.field, wdw));
        x.kind = ObservableKind::PkappaComplete;
        HamiltonianPair pc = make_pair(ctx, x, Surface::FullDW);
        pk_full.add(verify_pair(ch, pc, wdw));
        local.add(is_locally_hamiltonian(ch, pc.field, wdw));
    }
    for (auto& t : dw_pairs) out.push_back(t.done());
    out.push_back(pk.done());
    out.push_back(pk_local.done());
    out.push_back(pk_full.done());
    for (auto& t : c_pairs) out.push_back(t.done());
    if (n == 4) out.push_back(qw_single.done());
    out.push_back(local.done());
    out.push_back(dqw.done());
    out.push_back(pw_c.done());

    {
        ObservableSpec z = random_observable(m, ObservableKind::Qw, seed);
        for (auto& c : z.coeff) c = Poly();
        out.push_back(expect_zero(pre + "zero_coefficients", "zero coefficients give the zero form", make_observable(ctx, z)));
    }
    {
        ObservableSpec s = random_observable(m, ObservableKind::Qe, mix(seed, 300));
        HamiltonianPair p = make_pair(ctx, s);
        p.field += (m.E(0, 0) * dx(m, chi(m, s, 0, 0, 1), 1)).scaled(Rational(2)) * m.Dk();
        out.push_back(expect_nonzero(pre + "corrupted_sign_detected", "a sign flip in one field term leaves a residual",
                                     verify_pair(ch, p, wdw)));
        out.push_back(expect_nonzero(pre + "non_hamiltonian_detected", "kappa d/de is not locally Hamiltonian",
                                     is_locally_hamiltonian(ch, m.K() * m.De(0, 0), wdw)));
    }

    // Frame recovery from the constrained connection momenta, multiplied by det e.
    if (n == 4) {
        const Adjugate a = adjugate(m);
        std::size_t symbol = 0, raised = 0;
        const int hsign = m.h().signature_sign();
        for (int L = 0; L < n; ++L)
            for (int sg = 0; sg < n; ++sg) {
                PolyAccumulator acc(ch.id());
                eps4(m, [&](int I, int J, int K, int L2, int si) {
                    if (L2 != L) return;
                    eps4(m, [&](int mu, int nu, int rho, int s2, int sx) {
                        if (s2 != sg) return;
                        acc.add_product(m.density(I, J, mu, nu), a.adj[rho][K], Rational(si * sx, 6));
                    });
                });
                Poly lhs = acc.finish();
                Poly target = a.det * m.E(L, sg);
                symbol += (lhs - target).size();
                raised += (lhs.scaled(Rational(hsign)) - target).size();
            }
        out.push_back({pre + "e_recovery", "frame recovered from constrained connection momenta (epsilon symbols)", symbol,
                       true, ""});
        out.push_back(reported({pre + "e_recovery_raised", "frame recovery with the internal epsilon raised by h",
                                raised, true, "raised epsilon = " + std::to_string(hsign) + " x symbol"}));
        std::size_t quarter = 0;
        for (int I = 0; I < n; ++I)
            for (int J = 0; J < n; ++J)
                for (int mu = 0; mu < n; ++mu)
                    for (int nu = 0; nu < n; ++nu) {
                        PolyAccumulator acc(ch.id());
                        eps4(m, [&](int I2, int J2, int K, int L, int si) {
                            if (I2 != I || J2 != J) return;
                            eps4(m, [&](int mu2, int nu2, int rho, int sg, int sx) {
                                if (mu2 != mu || nu2 != nu) return;
                                acc.add_product(m.E(K, rho), m.E(L, sg), Rational(si * sx, 4));
                            });
                        });
                        quarter += (acc.finish() - m.density(I, J, mu, nu)).size();
                    }
        out.push_back({pre + "density_epsilon_form", "density equals one quarter eps eps e e", quarter, true, ""});
    } else {
        std::size_t res = 0;
        for (int L = 0; L < n; ++L)
            for (int sg = 0; sg < n; ++sg) {
                PolyAccumulator acc(ch.id());
                for_each_permutation(n, [&](const IndexTuple& a, int si) {
                    if (a[2] != L) return;
                    for_each_permutation(n, [&](const IndexTuple& b, int sx) {
                        if (b[2] != sg) return;
                        acc.add(m.density(a[0], a[1], b[0], b[1]), Rational(si * sx, 2));
                    });
                });
                res += (acc.finish() - m.E(L, sg)).size();
            }
        out.push_back({pre + "e_recovery", "frame recovered linearly from constrained connection momenta", res, true, ""});
    }

    // Infinitesimal symplectomorphisms: residual d(Ξ ⌟ ω^DW) is reported.
    {
        SymplectomorphismData zero = random_symplectomorphism(m, mix(seed, 400), 0);
        const Poly c = zero.ups;
        for (auto* v : {&zero.X, &zero.theta_e, &zero.theta_w}) for (auto& p : *v) p = Poly();
        for (auto* v : {&zero.ups_e, &zero.ups_w}) for (auto& p : *v) p = p.constant_term();
        zero.ups = c.constant_term();
        MultiVector xi0 = symplectomorphism_field(ctx, zero);
        out.push_back(reported(expect_zero(pre + "symplectomorphism.constant_momentum_shift",
                                           "symplectomorphism family with X = Theta = 0 and constant Upsilon",
                                           is_locally_hamiltonian(ch, xi0, wdw))));

        SymplectomorphismData cx = zero;
        for (auto& p : cx.ups_e) p = Poly();
        for (auto& p : cx.ups_w) p = Poly();
        cx.ups = Poly();
        for (int a = 0; a < n; ++a) cx.X[static_cast<std::size_t>(a)] = Poly(a + 1);
        MultiVector xic = symplectomorphism_field(ctx, cx);
        out.push_back(reported(expect_zero(pre + "symplectomorphism.constant_translation",
                                           "symplectomorphism family with constant X only",
                                           is_locally_hamiltonian(ch, xic, wdw))));
        ObservableSpec xs{ObservableKind::Pkappa, cx.X, 0, 1, 0};
        out.push_back({pre + "symplectomorphism.pkappa_special_case", "constant-X member equals the Pkappa field",
                       (xic - make_pair(ctx, xs).field).term_count(), true, ""});

        Tally cond{pre + "symplectomorphism.condition", "seeded Upsilon satisfies the integrability conditions"};
        Tally gen{pre + "symplectomorphism.generic", "generic seeded symplectomorphism family member", false};
        for (int t = 0; t < trials; ++t) {
            SymplectomorphismData d = random_symplectomorphism(m, mix(seed, 500 + t));
            cond.add(symplectomorphism_condition_terms(m, d));
            gen.add(is_locally_hamiltonian(ch, symplectomorphism_field(ctx, d), wdw));
        }
        out.push_back(cond.done());
        out.push_back(gen.done());
    }
    return out;
}

std::vector<CheckOutcome> bracket_checks(const PalatiniContext& ctx, std::uint64_t seed, int trials) {
    const Model& m = ctx.model();
    const Chart& ch = m.chart();
    const int n = m.n();
    const std::string pre = "brackets." + tag_of(m) + ".";
    const Form& w = ctx.omega_dw();

    Tally qq{pre + "QQ_zero", "brackets of two connection observables vanish"};
    Tally pp{pre + "PP_zero", "brackets of two connection-momentum observables vanish"};
    Tally qp{pre + "QP_display", "{Qw, Pw} = -psi phi beta_nu"};
    Tally qp_field{pre + "QP_field_display", "{Qw, Pw} is Hamiltonian with field (∂psi phi + psi ∂phi) ∂_kappa"};
    Tally kq{pre + "PkappaQ_display", "{Pkappa, Qw} matches its display"};
    Tally kp{pre + "PkappaP_display", "{Pkappa, Pw} matches its display"};
    Tally three{pre + "three_expressions", "the three bracket expressions agree on Hamiltonian pairs"};
    Tally anti{pre + "antisymmetry", "bracket antisymmetry"};
    Tally closure{pre + "validity_closure", "[Ξa, Ξb] ⌟ ω + d{a, b} = 0"};
    Tally three_disp{pre + "three_expressions_displayed_pkappa",
                     "three bracket expressions with the displayed Pkappa", false};

    for (int t = 0; t < trials; ++t) {
        const ObservableSpec s1 = random_observable(m, ObservableKind::Qw, mix(seed, 700 + t, 1));
        const ObservableSpec s2 = random_observable(m, ObservableKind::Qw, mix(seed, 700 + t, 2));
        const ObservableSpec f1 = random_observable(m, ObservableKind::Pw, mix(seed, 700 + t, 3));
        const ObservableSpec f2 = random_observable(m, ObservableKind::Pw, mix(seed, 700 + t, 4));
        const ObservableSpec xs = random_observable(m, ObservableKind::Pkappa, mix(seed, 700 + t, 5));
        const HamiltonianPair Q1 = make_pair(ctx, s1), Q2 = make_pair(ctx, s2), P1 = make_pair(ctx, f1),
                              P2 = make_pair(ctx, f2), K = make_pair(ctx, xs);
        qq.add(bracket(Q1, Q2, w));
        pp.add(bracket(P1, P2, w));

        const Form qpb = bracket(Q1, P1, w);
        Form disp(n - 1);
        MultiVector field(1);
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu)
                ordered_pairs(m, [&](int I, int J) {
                    const Poly a = psi(m, s1, I, J, mu, nu), b = phi(m, f1, I, J, mu);
                    disp -= (a * b) * bn(m, nu);
                    field += (dx(m, a, nu) * b + a * dx(m, b, nu)) * m.Dk();
                });
        qp.add(qpb - disp);
        qp_field.add(interior_product(field, w) + dform(m, qpb));

        Form dk(n - 1), dp(n - 1);
        const Poly div = divergence(m, xs.coeff);
        for (int rho = 0; rho < n; ++rho)
            for (int mu = 0; mu < n; ++mu)
                for (int nu = 0; nu < n; ++nu)
                    ordered_pairs(m, [&](int I, int J) {
                        const Poly& X = xs.coeff[rho];
                        const Poly a = psi(m, s1, I, J, mu, nu), b = phi(m, f1, I, J, mu);
                        dk += (X * m.W(I, J, mu) * dx(m, a, nu)) * bn(m, rho);
                        dk -= (X * a) * wedge(m.dW(I, J, mu), bmn(m, rho, nu));
                        dp += (X * m.PW(I, J, mu, nu) * dx(m, b, nu)) * bn(m, rho);
                        dp -= (X * b) * wedge(m.dPW(I, J, mu, nu), bmn(m, rho, nu));
                    });
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu)
                ordered_pairs(m, [&](int I, int J) {
                    const Poly b = phi(m, f1, I, J, mu);
                    for (int sg = 0; sg < n; ++sg)
                        dp += (m.PW(I, J, mu, sg) * dx(m, xs.coeff[nu], sg) * b) * bn(m, nu);
                    dp -= (m.PW(I, J, mu, nu) * div * b) * bn(m, nu);
                });
        kq.add(bracket(K, Q1, w) - dk);
        kp.add(bracket(K, P1, w) - dp);

        const std::uint64_t ps = mix(seed, 800 + t);
        const std::vector<HamiltonianPair> pool = hamiltonian_pool(ctx, ps, false);
        for (std::size_t i = 0; i < pool.size(); ++i)
            for (std::size_t j = i; j < pool.size(); ++j) {
                const Form b = bracket(pool[i], pool[j], w);
                three.add(b - bracket_via_first(ch, pool[i], pool[j]));
                three.add(b - bracket_via_second(ch, pool[i], pool[j]));
                anti.add(b + bracket(pool[j], pool[i], w));
                closure.add(interior_product(lie_bracket(pool[i].field, pool[j].field), w) + dform(m, b));
            }
        const std::vector<HamiltonianPair> disp_pool = with_displayed_pkappa(ctx, pool, ps);
        const HamiltonianPair& kd = disp_pool[kPkappaSlot];
        for (const HamiltonianPair& o : disp_pool) {
            const Form b = bracket(kd, o, w);
            three_disp.add(b - bracket_via_first(ch, kd, o));
            three_disp.add(b - bracket_via_second(ch, kd, o));
        }
    }
    std::vector<CheckOutcome> out;
    for (const Tally* t : {&qq, &pp, &qp, &qp_field, &kq, &kp, &three, &anti, &closure, &three_disp})
        out.push_back(t->done());
    return out;
}

std::vector<CheckOutcome> jacobi_checks(const PalatiniContext& ctx, std::uint64_t seed, int trials) {
    const Model& m = ctx.model();
    const Chart& ch = m.chart();
    const int n = m.n();
    const std::string pre = "jacobi." + tag_of(m) + ".";
    const Form& w = ctx.omega_dw();
    auto ob = [&](const Form& x, const HamiltonianPair& c) { return outer_bracket(ch, x, c); };

    Tally pure{pre + "A1_pure_brackets", "nested brackets within connection or momentum observables vanish"};
    Tally mixed{pre + "A1_mixed_brackets", "mixed nested brackets of connection observables vanish"};
    Tally cyc1{pre + "A1_cyclic_sums", "Jacobi cyclic sums of the connection algebra vanish"};
    Tally a1h{pre + "A1_homotopy", "connection algebra: defect and dS vanish"};
    Tally c1{pre + "A2_cyclic_first", "{{Pkappa, Qw}, Pw} matches its display"};
    Tally c2{pre + "A2_cyclic_second", "{{Qw, Pw}, Pkappa} matches its display"};
    Tally c3{pre + "A2_cyclic_third", "{{Pw, Pkappa}, Qw} matches its display"};
    Tally cs{pre + "A2_cyclic_sum_display", "sum of cyclic brackets matches its display"};
    Tally sd{pre + "A2_S_display", "S = -X psi phi beta_{rho nu}"};
    Tally dsd{pre + "A2_dS_display", "dS matches its expansion"};
    Tally hom{pre + "homotopy.Pkappa_Qw_Pw", "homotopy defect vanishes for (Pkappa, Qw, Pw)"};
    Tally dsn{pre + "homotopy.dS_nonzero", "dS is nonzero for generic seeds"};
    Tally rog{pre + "rogers_expansion", "dS equals the alternating commutator expansion"};
    Tally rogd{pre + "rogers_display", "dS equals the uniform-sign commutator expansion as displayed"};
    Tally rnd{pre + "homotopy.random_triples", "homotopy defect vanishes on seeded Hamiltonian triples"};
    Tally rndr{pre + "rogers_expansion.random_triples", "alternating commutator expansion on seeded triples"};
    Tally rndd{pre + "homotopy.random_triples_displayed_pkappa",
               "homotopy defect on seeded triples with the displayed Pkappa", false};
    Tally same{pre + "homotopy.equal_triple", "equal triple gives zero brackets, S and defect"};

    for (int t = 0; t < trials; ++t) {
        std::vector<HamiltonianPair> Q, P;
        std::vector<ObservableSpec> qs, ps;
        for (int i = 0; i < 3; ++i) {
            qs.push_back(random_observable(m, ObservableKind::Qw, mix(seed, 900 + t, i)));
            ps.push_back(random_observable(m, ObservableKind::Pw, mix(seed, 900 + t, 10 + i)));
            Q.push_back(make_pair(ctx, qs.back()));
            P.push_back(make_pair(ctx, ps.back()));
        }
        for (const auto* F : {&Q, &P}) {
            const auto& f = *F;
            pure.add(ob(bracket(f[0], f[1], w), f[2]));
            pure.add(ob(bracket(f[0], f[2], w), f[1]));
            pure.add(ob(bracket(f[1], f[2], w), f[0]));
        }
        Form s1 = ob(bracket(Q[0], P[0], w), Q[1]), s2 = ob(bracket(P[0], Q[1], w), Q[0]),
             s3 = ob(bracket(Q[1], Q[0], w), P[0]);
        Form r1 = ob(bracket(P[0], Q[0], w), P[1]), r2 = ob(bracket(Q[0], P[1], w), P[0]),
             r3 = ob(bracket(P[1], P[0], w), Q[0]);
        for (const Form* f : {&s1, &s2, &s3, &r1, &r2, &r3}) mixed.add(*f);
        cyc1.add(s1 + s2 + s3);
        cyc1.add(r1 + r2 + r3);
        HomotopyReport ha = homotopy(ch, Q[0], Q[1], P[0], w);
        a1h.add(ha.defect);
        a1h.add(dform(m, ha.S));

        const ObservableSpec xs = random_observable(m, ObservableKind::Pkappa, mix(seed, 900 + t, 20));
        const HamiltonianPair K = make_pair(ctx, xs);
        const ObservableSpec &sp = qs[0], &fp = ps[0];
        const std::vector<Poly>& X = xs.coeff;
        const Poly div = divergence(m, X);
        std::vector<Poly> d1(static_cast<std::size_t>(n)), d2 = d1, d3 = d1, dc = d1, dS = d1;
        Form S(n - 2);
        for (int mu = 0; mu < n; ++mu)
            ordered_pairs(m, [&](int I, int J) {
                const Poly f = phi(m, fp, I, J, mu);
                for (int nu = 0; nu < n; ++nu)
                    for (int r = 0; r < n; ++r) {
                        const Poly a = psi(m, sp, I, J, mu, nu), ar = psi(m, sp, I, J, mu, r);
                        const auto un = static_cast<std::size_t>(nu), ur = static_cast<std::size_t>(r);
                        const Poly& Xr = X[ur];
                        const Poly& Xn = X[un];
                        // Terms already summed over rho are added once, at r == 0.
                        const bool once = r == 0;
                        d1[un] -= f * dx(m, a, r) * Xr;
                        if (once) d1[un] -= f * a * div;
                        d1[un] += f * (Xn * dx(m, ar, r) + ar * dx(m, Xn, r));
                        d1[ur] += f * dx(m, a, nu) * Xr;
                        d1[un] -= f * dx(m, a, r) * Xr;

                        d2[un] -= Xr * a * dx(m, f, r);
                        d2[ur] += Xr * a * dx(m, f, nu);
                        d2[un] -= Xr * f * dx(m, a, r);
                        d2[ur] += Xr * f * dx(m, a, nu);

                        d3[un] -= a * (-Xr * dx(m, f, r));
                        d3[ur] -= a * Xr * dx(m, f, nu);
                        d3[un] -= a * Xr * dx(m, f, r);
                        if (once) d3[un] -= a * f * div;
                        d3[ur] += a * (Xr * dx(m, f, nu) + f * dx(m, Xr, nu));
                        // Fourth line: the dp^omega factor read as its contraction with psi.
                        d3[un] -= ar * dx(m, Xn, r) * f;
                        if (once) d3[un] += a * div * f;

                        if (once) dc[un] -= f * a * div;
                        dc[un] += f * ar * dx(m, Xn, r);
                        dc[un] -= Xr * a * dx(m, f, r);
                        dc[un] -= Xn * ar * dx(m, f, r);
                        dc[un] -= f * Xr * dx(m, a, r);
                        dc[un] += f * Xn * dx(m, ar, r);

                        if (once) dS[un] -= a * f * div;
                        dS[un] += ar * f * dx(m, Xn, r);
                        dS[un] -= Xr * a * dx(m, f, r);
                        dS[un] += Xn * ar * dx(m, f, r);
                        dS[un] -= f * Xr * dx(m, a, r);
                        dS[un] += f * Xn * dx(m, ar, r);

                        S -= (Xr * a * f) * bmn(m, r, nu);
                    }
            });
        auto beta_form = [&](const std::vector<Poly>& c) {
            Form f(n - 1);
            for (int nu = 0; nu < n; ++nu) f += c[static_cast<std::size_t>(nu)] * bn(m, nu);
            return f;
        };
        const Form e1 = ob(bracket(K, Q[0], w), P[0]), e2 = ob(bracket(Q[0], P[0], w), K),
                   e3 = ob(bracket(P[0], K, w), Q[0]);
        c1.add(e1 - beta_form(d1));
        c2.add(e2 - beta_form(d2));
        c3.add(e3 - beta_form(d3));
        cs.add(e1 + e2 + e3 - beta_form(dc));
        HomotopyReport h = homotopy(ch, K, Q[0], P[0], w);
        sd.add(h.S - S);
        const Form dSe = dform(m, h.S);
        dsd.add(dSe - beta_form(dS));
        hom.add(h.defect);
        dsn.add(dSe.is_zero() ? 1 : 0);
        const std::vector<MultiVector> fields{K.field, Q[0].field, P[0].field};
        rog.add(rogers_expansion(ch, fields, w) - dSe);
        rogd.add(rogers_uniform_sign(fields, w) - dSe);

        HomotopyReport hs = homotopy(ch, Q[0], Q[0], Q[0], w);
        same.add(hs.cyclic_sum);
        same.add(hs.S);
        same.add(hs.defect);
    }
    const int triples = std::max(10, 2 * trials);
    for (int t = 0; t < triples; ++t) {
        SplitMix64 r(mix(seed, 1000 + t));
        const std::size_t a = static_cast<std::size_t>(r.uniform(0, 6)), b = static_cast<std::size_t>(r.uniform(0, 6)),
                          c = static_cast<std::size_t>(r.uniform(0, 6));
        const std::uint64_t ps = mix(seed, 1100 + t);
        const std::vector<HamiltonianPair> pool = hamiltonian_pool(ctx, ps, false);
        const HomotopyReport h = homotopy(ch, pool[a], pool[b], pool[c], w);
        rnd.add(h.defect);
        rndr.add(rogers_expansion(ch, {pool[a].field, pool[b].field, pool[c].field}, w) - dform(m, h.S));
        if (a == kPkappaSlot || b == kPkappaSlot || c == kPkappaSlot) {
            const std::vector<HamiltonianPair> dp = with_displayed_pkappa(ctx, pool, ps);
            rndd.add(homotopy(ch, dp[a], dp[b], dp[c], w).defect);
        } else {
            // Triples without P_kappa are unchanged by the displayed variant.
            rndd.add(h.defect);
        }
    }
    std::vector<CheckOutcome> out;
    for (const Tally* t : {&pure, &mixed, &cyc1, &a1h, &c1, &c2, &c3, &cs, &sd, &dsd, &hom, &dsn, &rog, &rogd, &rnd,
                           &rndr, &rndd, &same})
        out.push_back(t->done());
    return out;
}

std::vector<CheckOutcome> constraint_checks(const PalatiniContext& ctx, std::uint64_t seed, int trials) {
    const Model& m = ctx.model();
    const Chart& ch = m.chart();
    const int n = m.n();
    const std::string pre = "constraints." + tag_of(m) + ".";
    const Form& w = ctx.omega_dw();
    std::vector<CheckOutcome> out;

    std::vector<HamiltonianPair> ce, cw;
    std::vector<ObservableSpec> ces, cws;
    for (int I = 0; I < n; ++I)
        for (int mu = 0; mu < n; ++mu) {
            ces.push_back({ObservableKind::Ce, {}, I, 0, mu});
            ce.push_back(make_pair(ctx, ces.back()));
        }
    for (int p = 0; p < m.pairs(); ++p)
        for (int mu = 0; mu < n; ++mu) {
            cws.push_back({ObservableKind::Cw, {}, m.pair_first(p), m.pair_second(p), mu});
            cw.push_back(make_pair(ctx, cws.back()));
        }

    Tally pairs{pre + "pairs", "constraint forms are Hamiltonian with the displayed fields"};
    Tally pulled{pre + "pullback_zero", "constraint forms vanish on the constraint surface"};
    Tally local{pre + "locally_hamiltonian", "constraint fields are locally Hamiltonian"};
    for (const auto* V : {&ce, &cw})
        for (const auto& p : *V) {
            pairs.add(verify_pair(ch, p, w));
            pulled.add(pullback(ch, ctx.constraint(), p.form));
            local.add(is_locally_hamiltonian(ch, p.field, w));
        }
    out.push_back(pairs.done());
    out.push_back(pulled.done());
    out.push_back(local.done());

    /// -d E^{[mu nu]}_{IJ} / d e^L_sigma as displayed: the epsilon form in four dimensions.
    auto display_dE = [&](int I, int J, int mu, int nu, int L, int sg) {
        if (n != 4) return -m.density(I, J, mu, nu).derivative(m.e(L, sg));
        Poly r;
        for (int K = 0; K < n; ++K)
            for (int rho = 0; rho < n; ++rho) {
                const int s = m.eps({I, J, K, L}) * m.eps({mu, nu, rho, sg});
                if (s) r += m.E(K, rho).scaled(Rational(-s, 2));
            }
        return r;
    };

    if (n == 4) {
        Tally dE{pre + "density_derivative_display", "d E / d e equals -(1/2) eps eps e as displayed"};
        Tally dEp{pre + "density_derivative_positive", "d E / d e equals +(1/2) eps eps e", false};
        Tally dC{pre + "dCw_display", "dCw = dp^omega ^ beta_nu + (1/2) eps eps e de ^ beta_nu"};
        Tally fC{pre + "Cw_field_display", "Cw field equals d/domega - (1/2) eps eps e d/dp^e"};
        for (std::size_t k = 0; k < cw.size(); ++k) {
            const auto& s = cws[k];
            Form dcd(n);
            MultiVector fd = half_dw(m, s.I, s.J, s.mu);
            for (int nu = 0; nu < n; ++nu) {
                dcd += wedge(m.dPW(s.I, s.J, s.mu, nu), bn(m, nu));
                for (int L = 0; L < n; ++L)
                    for (int sg = 0; sg < n; ++sg) {
                        const Poly d = m.density(s.I, s.J, s.mu, nu).derivative(m.e(L, sg));
                        const Poly disp = display_dE(s.I, s.J, s.mu, nu, L, sg);
                        dE.add((d - disp).size());
                        dEp.add((d + disp).size());
                        dcd -= disp * wedge(m.dE(L, sg), bn(m, nu));
                        fd += disp * m.Dpe(L, sg, nu);
                    }
            }
            dC.add(dform(m, cw[k].form) - dcd);
            fC.add((cw[k].field - fd).term_count());
        }
        for (const Tally* t : {&dE, &dEp, &dC, &fC}) out.push_back(t->done());
    }

    Tally ee{pre + "bracket_ee_zero", "{Ce, Ce} = 0"};
    Tally ww{pre + "bracket_ww_zero", "{Cw, Cw} = 0"};
    Tally ew{pre + "bracket_ew_display", "{Ce^L_sigma, Cw^{IJ}_mu} matches its display"};
    Tally ewp{pre + "bracket_ew_positive", "{Ce^L_sigma, Cw^{IJ}_mu} = +d E / d e^L_sigma beta_nu", false};
    for (const auto& a : ce)
        for (const auto& b : ce) ee.add(bracket(a, b, w));
    for (const auto& a : cw)
        for (const auto& b : cw) ww.add(bracket(a, b, w));
    for (std::size_t i = 0; i < ce.size(); ++i)
        for (std::size_t k = 0; k < cw.size(); ++k) {
            const auto &se = ces[i], &sw = cws[k];
            Form disp(n - 1);
            for (int nu = 0; nu < n; ++nu) disp += display_dE(sw.I, sw.J, sw.mu, nu, se.I, se.mu) * bn(m, nu);
            const Form b = bracket(ce[i], cw[k], w);
            ew.add(b - disp);
            ewp.add(b + disp);
        }
    for (const Tally* t : {&ee, &ww, &ew, &ewp}) out.push_back(t->done());

    // Cyclic suites on seeded index choices.
    Tally y1{pre + "cyclic_ee_w_display", "cyclic brackets of (Ce, Ce, Cw) match their displays"};
    Tally y1p{pre + "cyclic_ee_w_negated", "cyclic brackets of (Ce, Ce, Cw) with negated displays", false};
    Tally y1s{pre + "cyclic_ee_w_sum", "Jacobi sum of (Ce, Ce, Cw) vanishes"};
    Tally y2{pre + "cyclic_e_ww_zero", "cyclic brackets of (Ce, Cw, Cw) vanish"};
    Tally y2s{pre + "cyclic_e_ww_sum", "Jacobi sum of (Ce, Cw, Cw) vanishes"};
    Tally yh{pre + "homotopy", "homotopy defect vanishes on constraint triples"};
    auto ob = [&](const Form& x, const HamiltonianPair& c) { return outer_bracket(ch, x, c); };
    for (int t = 0; t < 4 * trials; ++t) {
        SplitMix64 r(mix(seed, 1200 + t));
        std::size_t iM = static_cast<std::size_t>(r.uniform(0, static_cast<long>(ce.size()) - 1));
        std::size_t iL = static_cast<std::size_t>(r.uniform(0, static_cast<long>(ce.size()) - 1));
        const std::size_t kA = static_cast<std::size_t>(r.uniform(0, static_cast<long>(cw.size()) - 1));
        if (n == 4 && t % 2 == 0) {
            // Every other sample completes both epsilons so the displayed value is nonzero.
            std::vector<int> in, sp;
            for (int a = 0; a < n; ++a) {
                if (a != cws[kA].I && a != cws[kA].J) in.push_back(a);
                if (a != cws[kA].mu) sp.push_back(a);
            }
            if (r.uniform(0, 1)) std::swap(in[0], in[1]);
            const std::size_t l = static_cast<std::size_t>(r.uniform(0, 2));
            std::size_t s2 = static_cast<std::size_t>(r.uniform(0, 1));
            if (s2 >= l) ++s2;
            iM = static_cast<std::size_t>(in[0] * n + sp[l]);
            iL = static_cast<std::size_t>(in[1] * n + sp[s2]);
        }
        const std::size_t kB = static_cast<std::size_t>(r.uniform(0, static_cast<long>(cw.size()) - 1));
        const auto &M = ce[iM], &Lp = ce[iL], &A = cw[kA], &B = cw[kB];
        const auto &sM = ces[iM], &sL = ces[iL], &sA = cws[kA];
        const Form a1 = ob(bracket(M, Lp, w), A), a2 = ob(bracket(Lp, A, w), M), a3 = ob(bracket(A, M, w), Lp);
        // Second derivative of E, displayed as (1/2) eps_{IJML} eps^{mu nu lambda sigma} in four dimensions.
        Form second(n - 1);
        for (int nu = 0; nu < n; ++nu) {
            Poly d2;
            if (n == 4) d2 = Poly(Rational(m.eps({sA.I, sA.J, sM.I, sL.I}) * m.eps({sA.mu, nu, sM.mu, sL.mu}), 2));
            else d2 = m.density(sA.I, sA.J, sA.mu, nu).derivative(m.e(sL.I, sL.mu)).derivative(m.e(sM.I, sM.mu));
            second += d2 * bn(m, nu);
        }
        y1.add(a1);
        y1.add(a2 - second);
        y1.add(a3 + second);
        y1p.add(a1);
        y1p.add(a2 + second);
        y1p.add(a3 - second);
        y1s.add(a1 + a2 + a3);
        const Form b1 = ob(bracket(M, B, w), A), b2 = ob(bracket(B, A, w), M), b3 = ob(bracket(A, M, w), B);
        for (const Form* f : {&b1, &b2, &b3}) y2.add(*f);
        y2s.add(b1 + b2 + b3);
        yh.add(homotopy(ch, M, Lp, A, w).defect);
        yh.add(homotopy(ch, M, A, B, w).defect);
    }
    for (const Tally* t : {&y1, &y1p, &y1s, &y2, &y2s, &yh}) out.push_back(t->done());
    return out;
}

std::vector<CheckOutcome> pi_checks(const PalatiniContext& ctx, std::uint64_t, int) {
    const Model& m = ctx.model();
    const Chart& ch = m.chart();
    const int n = m.n();
    const std::string pre = "pi." + tag_of(m) + ".";
    std::vector<CheckOutcome> out;

    // Momenta restricted to be antisymmetric in (mu, nu).
    Substitution anti;
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu <= mu; ++nu) {
            for (int I = 0; I < n; ++I) anti.emplace(m.pe(I, mu, nu), nu == mu ? Poly() : -m.PE(I, nu, mu));
            for (int p = 0; p < m.pairs(); ++p)
                anti.emplace(m.pw(p, mu, nu), nu == mu ? Poly() : -m.var(m.pw(p, nu, mu)));
        }

    const Form dec = varpi_decomposition(m);
    out.push_back(compare_forms(pre + "decomposition", "multisymplectic form from the canonical (n-2)-forms",
                                ctx.omega_dw(), dec));
    out.push_back(reported(compare_forms(pre + "decomposition_antisymmetric_momenta",
                                         "decomposition with momenta antisymmetric in their spacetime indices",
                                         pullback(ch, anti, ctx.omega_dw()), pullback(ch, anti, dec))));

    Form lhs(n + 1), rhs(n + 1);
    for (int I = 0; I < n; ++I) {
        Form e(1);
        for (int r = 0; r < n; ++r) e += m.E(I, r) * m.dX(r);
        lhs += wedge(dform(m, e), dform(m, varpi_e(m, I)));
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu) rhs += wedge(wedge(m.dPE(I, mu, nu), m.dE(I, mu)), bn(m, nu));
    }
    out.push_back(compare_forms(pre + "frame_term_expansion", "de^I ^ dvarpi_I = dp^e ^ de ^ beta_nu", lhs, rhs));
    out.push_back(reported(compare_forms(pre + "frame_term_expansion_antisymmetric_momenta",
                                         "frame term expansion with antisymmetric momenta", pullback(ch, anti, lhs),
                                         pullback(ch, anti, rhs))));

    Form pe_pulled(n - 2);
    for (int I = 0; I < n; ++I) pe_pulled += pullback(ch, ctx.constraint(), varpi_e(m, I));
    out.push_back(expect_zero(pre + "varpi_e_pullback", "frame varpi vanishes on the constraint surface", pe_pulled));

    if (n == 4) {
        Form res(n - 2);
        ordered_pairs(m, [&](int I, int J) {
            Form disp(n - 2);
            for (int mu = 0; mu < n; ++mu)
                for (int nu = 0; nu < n; ++nu)
                    for (int sg = 0; sg < n; ++sg)
                        for (int rho = 0; rho < n; ++rho)
                            for (int K = 0; K < n; ++K)
                                for (int L = 0; L < n; ++L) {
                                    const int s = m.eps({mu, nu, sg, rho}) * m.eps({I, J, K, L});
                                    if (s) disp += (m.E(K, sg) * m.E(L, rho)).scaled(Rational(-s, 8)) * bmn(m, mu, nu);
                                }
            res += pullback(ch, ctx.constraint(), varpi_w(m, I, J)) - disp;
        });
        out.push_back(expect_zero(pre + "varpi_w_pullback_display",
                                  "connection varpi on the constraint surface matches its epsilon form", res));
    }
    return out;
}

}  // namespace dwv
