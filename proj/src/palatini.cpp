#include "dwv/palatini.hpp"

#include <stdexcept>

namespace dwv {

namespace {

using Perm = const IndexTuple&;

void perms(int n, const std::function<void(const IndexTuple&, int)>& f) { for_each_permutation(n, f); }

Form w3(const Form& a, const Form& b, const Form& c) { return wedge(wedge(a, b), c); }

Rational half() { return Rational(1, 2); }

int sign_n(int n) { return n % 2 ? -1 : 1; }

/// Coefficient Polys of the 1-form r on the given basis variables.
std::vector<Poly> block(const Form& r, const std::vector<VarId>& basis) {
    std::vector<Poly> out;
    out.reserve(basis.size());
    for (VarId v : basis) {
        int s;
        out.push_back(r.coefficient(Blade::sorted({v}, s)));
    }
    return out;
}

std::vector<VarId> x_basis(const Model& m) {
    std::vector<VarId> b;
    for (int mu = 0; mu < m.n(); ++mu) b.push_back(m.x(mu));
    return b;
}
/// Ordered (L, sigma).
std::vector<VarId> e_basis(const Model& m) {
    std::vector<VarId> b;
    for (int L = 0; L < m.n(); ++L)
        for (int s = 0; s < m.n(); ++s) b.push_back(m.e(L, s));
    return b;
}
/// Ordered (stored pair, mu).
std::vector<VarId> w_basis(const Model& m) {
    std::vector<VarId> b;
    for (int p = 0; p < m.pairs(); ++p)
        for (int mu = 0; mu < m.n(); ++mu) b.push_back(m.w(p, mu));
    return b;
}

/// Display polys indexed like e_basis: f(L, sigma).
template <class F>
std::vector<Poly> e_indexed(const Model& m, F&& f) {
    std::vector<Poly> out;
    for (int L = 0; L < m.n(); ++L)
        for (int s = 0; s < m.n(); ++s) out.push_back(f(L, s));
    return out;
}
/// Display polys indexed like w_basis: f(I, J, mu) with I < J.
template <class F>
std::vector<Poly> w_indexed(const Model& m, F&& f) {
    std::vector<Poly> out;
    for (int p = 0; p < m.pairs(); ++p)
        for (int mu = 0; mu < m.n(); ++mu) out.push_back(f(m.pair_first(p), m.pair_second(p), mu));
    return out;
}
template <class F>
std::vector<Poly> x_indexed(const Model& m, F&& f) {
    std::vector<Poly> out;
    for (int l = 0; l < m.n(); ++l) out.push_back(f(l));
    return out;
}

/// Sum over (I, J, K, M) and (mu, nu, rho, sigma) permutations of f(internal, base, sign).
void eps_eps(int n, const std::function<void(const IndexTuple&, const IndexTuple&, int)>& f) {
    perms(n, [&](const IndexTuple& a, int sa) { perms(n, [&](const IndexTuple& b, int sb) { f(a, b, sa * sb); }); });
}

/// omega_mu^I_K omega_nu^{KJ} summed over K.
Poly ww(const Model& m, int I, int mu, int J, int nu) {
    PolyAccumulator acc(m.chart().id());
    for (int K = 0; K < m.n(); ++K) acc.add_product(m.Wmix(I, mu, K), m.W(K, J, nu));
    return acc.finish();
}
/// omega_mu^I_K e^K_nu summed over K.
Poly we(const Model& m, int I, int mu, int nu) {
    PolyAccumulator acc(m.chart().id());
    for (int K = 0; K < m.n(); ++K) acc.add_product(m.Wmix(I, mu, K), m.E(K, nu));
    return acc.finish();
}

Form scalar_d(const Model& m, const Poly& p) { return exterior_derivative(m.chart(), Form::scalar(p)); }

Form dk_beta(const Model& m) { return wedge(m.dK(), m.vol().beta); }

CheckOutcome reported(CheckOutcome c) {
    c.assertive = false;
    return c;
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// Canonical objects

const Form& PalatiniContext::theta_dw() const {
    if (theta_dw_) return *theta_dw_;
    const Model& m = *m_;
    const int n = m.n();
    Form t = m.K() * m.vol().beta;
    for (int nu = 0; nu < n; ++nu) {
        const Form& bn = m.vol().beta_mu[nu];
        for (int mu = 0; mu < n; ++mu) {
            for (int I = 0; I < n; ++I) t += m.PE(I, mu, nu) * wedge(m.dE(I, mu), bn);
            for (int I = 0; I < n; ++I)
                for (int J = 0; J < n; ++J)
                    if (I != J) t += m.PW(I, J, mu, nu) * wedge(m.dW(I, J, mu), bn);
        }
    }
    return *(theta_dw_ = std::move(t));
}

const Form& PalatiniContext::omega_dw() const {
    if (!omega_dw_) omega_dw_ = exterior_derivative(m_->chart(), theta_dw());
    return *omega_dw_;
}

const Substitution& PalatiniContext::constraint() const {
    if (constraint_) return *constraint_;
    const Model& m = *m_;
    const int n = m.n();
    Substitution s;
    for (int I = 0; I < n; ++I)
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu) s.emplace(m.pe(I, mu, nu), Poly());
    for (int p = 0; p < m.pairs(); ++p)
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu)
                s.emplace(m.pw(p, mu, nu), -m.density(m.pair_first(p), m.pair_second(p), mu, nu));
    return *(constraint_ = std::move(s));
}

const Substitution& PalatiniContext::level_set() const {
    if (level_set_) return *level_set_;
    Substitution s = constraint();
    s[m_->kappa()] = m_->K() - hamiltonian();
    return *(level_set_ = std::move(s));
}

const Form& PalatiniContext::theta_palatini() const {
    if (!theta_pal_) theta_pal_ = pullback(m_->chart(), constraint(), theta_dw());
    return *theta_pal_;
}

const Form& PalatiniContext::omega_palatini() const {
    if (!omega_pal_) omega_pal_ = pullback(m_->chart(), constraint(), omega_dw());
    return *omega_pal_;
}

const Poly& PalatiniContext::hamiltonian() const {
    if (H_) return *H_;
    const Model& m = *m_;
    const int n = m.n();
    PolyAccumulator acc(m.chart().id());
    acc.add(m.K());
    for (int I = 0; I < n; ++I)
        for (int J = 0; J < n; ++J)
            for (int mu = 0; mu < n; ++mu)
                for (int nu = 0; nu < n; ++nu) {
                    const Poly& E = m.density(I, J, mu, nu);
                    if (E.is_zero()) continue;
                    acc.add_product(E, ww(m, J, mu, I, nu), Rational(-1));
                }
    return *(H_ = acc.finish());
}

const Form& PalatiniContext::dH() const {
    if (!dH_) dH_ = scalar_d(*m_, hamiltonian());
    return *dH_;
}

const std::vector<MultiVector>& PalatiniContext::hamilton_multivector() const {
    if (X_) return *X_;
    const Model& m = *m_;
    const int n = m.n();
    std::vector<MultiVector> X;
    for (int nu = 0; nu < n; ++nu) {
        MultiVector v = m.Dx(nu);
        for (int I = 0; I < n; ++I)
            for (int mu = 0; mu < n; ++mu) v += MultiVector::basis({m.e(I, mu)}, m.ThetaE(I, nu, mu));
        for (int p = 0; p < m.pairs(); ++p)
            for (int mu = 0; mu < n; ++mu) v += MultiVector::basis({m.w(p, mu)}, m.var(m.theta_w(p, nu, mu)));
        v += MultiVector::basis({m.kappa()}, m.Ups(nu));
        X.push_back(std::move(v));
    }
    return *(X_ = std::move(X));
}

const Form& PalatiniContext::hamilton_residual() const {
    if (!ham_res_)
        ham_res_ = interior_sequence(hamilton_multivector(), omega_palatini()) -
                   dH().scaled(Rational(sign_n(m_->n())));
    return *ham_res_;
}

const Form& PalatiniContext::theta_premulti() const {
    if (theta_pre_) return *theta_pre_;
    const Model& m = *m_;
    const int n = m.n();
    // One-forms on the base with field coefficients.
    std::vector<Form> e1(n);
    std::vector<std::vector<Form>> w1(n, std::vector<Form>(n, Form(1))), wm(n, std::vector<Form>(n, Form(1)));
    for (int I = 0; I < n; ++I) {
        e1[I] = Form(1);
        for (int mu = 0; mu < n; ++mu) e1[I] += m.E(I, mu) * m.dX(mu);
        for (int J = 0; J < n; ++J)
            for (int mu = 0; mu < n; ++mu) {
                w1[I][J] += m.W(I, J, mu) * m.dX(mu);
                wm[I][J] += m.Wmix(I, mu, J) * m.dX(mu);
            }
    }
    auto F = [&](int K, int L) {
        Form f = exterior_derivative(m.chart(), w1[K][L]);
        for (int M = 0; M < n; ++M) f += wedge(wm[K][M], w1[M][L]);
        return f;
    };
    Form t(n);
    if (n == 3) {
        perms(3, [&](Perm a, int s) { t += wedge(e1[a[0]], F(a[1], a[2])).scaled(Rational(s)); });
    } else {
        perms(4, [&](Perm a, int s) {
            t += w3(e1[a[0]], e1[a[1]], F(a[2], a[3])).scaled(Rational(s, 2));
        });
    }
    return *(theta_pre_ = std::move(t));
}

const Form& PalatiniContext::omega_premulti() const {
    if (!omega_pre_) omega_pre_ = exterior_derivative(m_->chart(), theta_premulti());
    return *omega_pre_;
}

const Form& PalatiniContext::premulti_residual() const {
    if (pre_res_) return *pre_res_;
    std::vector<MultiVector> X = hamilton_multivector();
    int sign;
    const Blade kb = Blade::sorted({m_->kappa()}, sign);
    for (auto& f : X) f = f - MultiVector::basis({m_->kappa()}, f.coefficient(kb));
    return *(pre_res_ = interior_sequence(X, omega_premulti()));
}

// ---------------------------------------------------------------------------------------------
// Lagrangian, jets, geometry

Poly lagrangian_density(const Model& m) {
    const int n = m.n();
    PolyAccumulator acc(m.chart().id());
    for (int I = 0; I < n; ++I)
        for (int J = 0; J < n; ++J)
            for (int mu = 0; mu < n; ++mu)
                for (int nu = 0; nu < n; ++nu) {
                    const Poly& E = m.density(I, J, mu, nu);
                    if (E.is_zero()) continue;
                    acc.add_product(E, m.VW(I, J, mu, nu) + ww(m, I, mu, J, nu));
                }
    return acc.finish();
}

Substitution jet_substitution(const Model& m) {
    const int n = m.n();
    Substitution s;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            for (int I = 0; I < n; ++I) s.emplace(m.theta_e(I, a, b), m.VE(I, a, b));
            for (int p = 0; p < m.pairs(); ++p) s.emplace(m.theta_w(p, a, b), m.var(m.v_w(p, a, b)));
        }
    return s;
}

Substitution covariant_substitution(const Model& m) {
    const int n = m.n();
    Substitution s;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            for (int I = 0; I < n; ++I) s.emplace(m.theta_e(I, a, b), m.VE(I, a, b) + we(m, I, a, b));
            for (int p = 0; p < m.pairs(); ++p) {
                int I = m.pair_first(p), J = m.pair_second(p);
                s.emplace(m.theta_w(p, a, b), m.var(m.v_w(p, a, b)) + ww(m, I, a, J, b) - ww(m, J, a, I, b));
            }
        }
    return s;
}

Poly curvature(const Model& m, int I, int J, int mu, int nu) {
    return m.VW(I, J, mu, nu) - m.VW(I, J, nu, mu) + ww(m, I, mu, J, nu) - ww(m, I, nu, J, mu);
}

Poly torsion(const Model& m, int I, int mu, int nu) {
    return m.VE(I, mu, nu) - m.VE(I, nu, mu) + we(m, I, mu, nu) - we(m, I, nu, mu);
}

Poly covariant_connection(const Model& m, int I, int J, int mu, int nu) {
    // 2 X_[mu Y_nu] = X_mu Y_nu - X_nu Y_mu.
    return m.VW(I, J, mu, nu) - m.VW(I, J, nu, mu) + ww(m, I, mu, J, nu) - ww(m, I, nu, J, mu) -
           ww(m, J, mu, I, nu) + ww(m, J, nu, I, mu);
}

FrameSample random_frame_sample(int n, std::uint64_t seed) {
    FrameSample s;
    s.e = random_vielbein(n, seed);
    SplitMix64 rng(seed ^ 0x5deece66dULL);
    auto r = [&] { return Rational(rng.uniform(-9, 9), rng.uniform(1, 5)); };
    s.de.assign(n, RMatrix(n, std::vector<Rational>(n)));
    s.w.assign(n, RMatrix(n, std::vector<Rational>(n)));
    for (int mu = 0; mu < n; ++mu)
        for (int I = 0; I < n; ++I) {
            for (int rho = 0; rho < n; ++rho) s.de[mu][I][rho] = r();
            for (int J = I + 1; J < n; ++J) {
                s.w[mu][I][J] = r();
                s.w[mu][J][I] = -s.w[mu][I][J];
            }
        }
    return s;
}

std::vector<RMatrix> christoffel(const FrameSample& s, const InternalMetric& h) {
    const int n = static_cast<int>(s.e.size());
    RMatrix inv = inverse(s.e);  // inv[mu][I] = e^mu_I
    std::vector<RMatrix> G(n, RMatrix(n, std::vector<Rational>(n)));
    for (int nu = 0; nu < n; ++nu)
        for (int mu = 0; mu < n; ++mu)
            for (int rho = 0; rho < n; ++rho) {
                Rational g;
                for (int I = 0; I < n; ++I) {
                    g += inv[nu][I] * s.de[mu][I][rho];
                    for (int J = 0; J < n; ++J) g += inv[nu][I] * s.w[mu][I][J] * Rational(h(J)) * s.e[J][rho];
                }
                G[nu][mu][rho] = g;
            }
    return G;
}

std::vector<Rational> compatibility_residual(const FrameSample& s, const InternalMetric& h) {
    const int n = static_cast<int>(s.e.size());
    auto G = christoffel(s, h);
    std::vector<Rational> out;
    for (int mu = 0; mu < n; ++mu)
        for (int I = 0; I < n; ++I)
            for (int nu = 0; nu < n; ++nu) {
                Rational r = s.de[mu][I][nu];
                for (int K = 0; K < n; ++K) r += s.e[K][nu] * s.w[mu][I][K] * Rational(h(K));
                for (int rho = 0; rho < n; ++rho) r -= G[rho][mu][nu] * s.e[I][rho];
                out.push_back(r);
            }
    return out;
}

RMatrix spacetime_metric(const RMatrix& e, const InternalMetric& h) {
    const int n = static_cast<int>(e.size());
    RMatrix g(n, std::vector<Rational>(n));
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu)
            for (int I = 0; I < n; ++I) g[mu][nu] += e[I][mu] * Rational(h(I)) * e[I][nu];
    return g;
}

ExtendedHamiltonian extended_hamiltonian(const PalatiniContext& ctx) {
    const Model& m = ctx.model();
    const int n = m.n();
    PolyAccumulator acc(m.chart().id());
    acc.add(ctx.hamiltonian());
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
            for (int I = 0; I < n; ++I) acc.add_product(m.LamE(I, nu, mu), m.PE(I, mu, nu));
            for (int I = 0; I < n; ++I)
                for (int J = 0; J < n; ++J)
                    if (I != J) acc.add_product(m.LamW(I, J, nu, mu), m.PW(I, J, mu, nu) + m.density(I, J, mu, nu));
        }
    ExtendedHamiltonian x;
    x.H = acc.finish();
    for (int I = 0; I < n; ++I)
        for (int mu = 0; mu < n; ++mu) {
            x.d_e.push_back(x.H.derivative(m.e(I, mu)));
            for (int nu = 0; nu < n; ++nu) x.d_pe.push_back(x.H.derivative(m.pe(I, mu, nu)));
        }
    for (int p = 0; p < m.pairs(); ++p)
        for (int mu = 0; mu < n; ++mu) {
            x.d_w.push_back(x.H.derivative(m.w(p, mu)));
            for (int nu = 0; nu < n; ++nu) x.d_pw.push_back(x.H.derivative(m.pw(p, mu, nu)));
        }
    return x;
}

// ---------------------------------------------------------------------------------------------
// Checks

std::vector<CheckOutcome> canonical_checks(const PalatiniContext& ctx) {
    const Model& m = ctx.model();
    const int n = m.n();
    const std::string tag = n == 3 ? "n3" : "n4";
    std::vector<CheckOutcome> out;

    // Explicit form dkappa ^ beta + dp^e ^ de ^ beta_nu + dp^omega ^ domega ^ beta_nu.
    Form explicit_omega = dk_beta(m);
    for (int nu = 0; nu < n; ++nu)
        for (int mu = 0; mu < n; ++mu) {
            for (int I = 0; I < n; ++I) explicit_omega += w3(m.dPE(I, mu, nu), m.dE(I, mu), m.vol().beta_mu[nu]);
            for (int I = 0; I < n; ++I)
                for (int J = 0; J < n; ++J)
                    if (I != J) explicit_omega += w3(m.dPW(I, J, mu, nu), m.dW(I, J, mu), m.vol().beta_mu[nu]);
        }
    out.push_back(compare_forms("canonical." + tag + ".d_theta", "exterior derivative of the Poincare-Cartan form",
                                ctx.omega_dw(), explicit_omega));
    out.push_back(expect_zero("canonical." + tag + ".closed", "multisymplectic form is closed",
                              exterior_derivative(m.chart(), ctx.omega_dw())));
    std::size_t expected = 1 + static_cast<std::size_t>(n * n * n + n * n * m.pairs());
    CheckOutcome count{"canonical." + tag + ".term_count", "term count of the multisymplectic form",
                       ctx.omega_dw().term_count() > expected ? ctx.omega_dw().term_count() - expected
                                                              : expected - ctx.omega_dw().term_count(),
                       true, "expected " + std::to_string(expected)};
    out.push_back(count);

    const Substitution& C = ctx.constraint();
    out.push_back(compare_forms("canonical." + tag + ".pullback_commutes_theta", "pullback commutes with d on theta",
                                pullback(m.chart(), C, ctx.omega_dw()),
                                exterior_derivative(m.chart(), ctx.theta_palatini())));
    const Substitution& C0 = ctx.level_set();
    out.push_back(compare_forms("canonical." + tag + ".pullback_commutes_level_set",
                                "level-set pullback commutes with d on theta",
                                pullback(m.chart(), C0, ctx.omega_dw()),
                                exterior_derivative(m.chart(), pullback(m.chart(), C0, ctx.theta_dw()))));
    Form pe_part(n);
    for (int nu = 0; nu < n; ++nu)
        for (int mu = 0; mu < n; ++mu)
            for (int I = 0; I < n; ++I) pe_part += m.PE(I, mu, nu) * wedge(m.dE(I, mu), m.vol().beta_mu[nu]);
    out.push_back(expect_zero("canonical." + tag + ".pullback_pe", "frame momenta vanish on the constraint surface",
                              pullback(m.chart(), C, pe_part)));
    out.push_back(expect_zero("canonical." + tag + ".palatini_closed", "constrained multisymplectic form is closed",
                              exterior_derivative(m.chart(), ctx.omega_palatini())));
    return out;
}

std::vector<CheckOutcome> legendre_checks(const PalatiniContext& ctx) {
    const Model& m = ctx.model();
    const int n = m.n();
    const std::string tag = n == 3 ? "n3" : "n4";
    std::vector<CheckOutcome> out;

    // Densities as explicit epsilon contractions.
    std::size_t mism = 0;
    for (int I = 0; I < n; ++I)
        for (int J = 0; J < n; ++J)
            for (int mu = 0; mu < n; ++mu)
                for (int nu = 0; nu < n; ++nu) {
                    PolyAccumulator acc(m.chart().id());
                    eps_eps(n, [&](Perm a, Perm b, int s) {
                        if (a[0] != I || a[1] != J || b[0] != mu || b[1] != nu) return;
                        if (n == 3) acc.add(m.E(a[2], b[2]), Rational(s, 2));
                        else acc.add_product(m.E(a[2], b[2]), m.E(a[3], b[3]), Rational(s, 4));
                    });
                    mism += (m.density(I, J, mu, nu) - acc.finish()).size();
                }
    out.push_back({"legendre." + tag + ".density_epsilon", "multimomentum as an epsilon contraction of the frame",
                   mism, true, {}});

    // Legendre relation: half the stored derivative of <p, Z> equals half the stored derivative of L.
    const Poly L = lagrangian_density(m);
    std::size_t mism_w = 0, mism_e = 0;
    const Substitution& C = ctx.constraint();
    for (int p = 0; p < m.pairs(); ++p)
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu) {
                // p^{omega_mu nu} pairs with v_{nu mu}; L's derivative by v_{nu mu} is E^{[nu mu]}.
                Poly dL = L.derivative(m.v_w(p, nu, mu)).scaled(half());
                mism_w += (dL - C.at(m.pw(p, mu, nu))).size();
            }
    for (int I = 0; I < n; ++I)
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu) mism_e += L.derivative(m.v_e(I, nu, mu)).size();
    out.push_back({"legendre." + tag + ".connection_momenta", "Legendre correspondence for the connection momenta",
                   mism_w, true, {}});
    out.push_back({"legendre." + tag + ".frame_momenta", "Legendre correspondence for the frame momenta", mism_e,
                   true, {}});

    // omega_palatini against the explicit displays.
    Form ppaa = dk_beta(m);
    for (int I = 0; I < n; ++I)
        for (int J = 0; J < n; ++J)
            for (int mu = 0; mu < n; ++mu)
                for (int nu = 0; nu < n; ++nu) {
                    if (I == J) continue;
                    ppaa -= w3(scalar_d(m, m.density(I, J, mu, nu)), m.dW(I, J, mu), m.vol().beta_mu[nu]);
                }
    out.push_back(compare_forms("legendre." + tag + ".omega_palatini_density",
                                "constrained multisymplectic form via the density differential",
                                ctx.omega_palatini(), ppaa));
    Form expl = dk_beta(m);
    eps_eps(n, [&](Perm a, Perm b, int s) {
        int I = a[0], J = a[1];
        int mu = b[0], nu = b[1];
        if (n == 3) {
            // -(1/2) eps_{IJM} eps^{mu nu lambda} de^M_lambda ^ domega^{IJ}_mu ^ beta_nu
            expl -= w3(m.dE(a[2], b[2]), m.dW(I, J, mu), m.vol().beta_mu[nu]).scaled(Rational(s, 2));
        } else {
            // -(1/2) eps_{IJKL} eps^{mu nu rho sigma} e^K_rho de^L_sigma ^ domega^{IJ}_mu ^ beta_nu
            expl -= m.E(a[2], b[2]) *
                    w3(m.dE(a[3], b[3]), m.dW(I, J, mu), m.vol().beta_mu[nu]).scaled(Rational(s, 2));
        }
    });
    out.push_back(compare_forms("legendre." + tag + ".omega_palatini_explicit",
                                "constrained multisymplectic form in epsilon-contracted frame form",
                                ctx.omega_palatini(), expl));
    return out;
}

std::vector<CheckOutcome> lagrangian_checks(const PalatiniContext& ctx, std::uint64_t seed, int trials) {
    const Model& m = ctx.model();
    const int n = m.n();
    const std::string tag = n == 3 ? "n3" : "n4";
    std::vector<CheckOutcome> out;
    const Poly L3 = lagrangian_density(m);

    // omega = 0, v = 0 gives zero.
    Substitution zero;
    for (int p = 0; p < m.pairs(); ++p)
        for (int a = 0; a < n; ++a) {
            zero.emplace(m.w(p, a), Poly());
            for (int b = 0; b < n; ++b) zero.emplace(m.v_w(p, a, b), Poly());
        }
    out.push_back(expect_zero("lagrangian." + tag + ".vacuum", "Lagrangian vanishes for zero connection data",
                              L3.substitute(zero)));

    if (n == 4) {
        PolyAccumulator acc(m.chart().id());
        eps_eps(4, [&](Perm a, Perm b, int s) {
            int I = a[0], J = a[1], K = a[2], Lx = a[3];
            int mu = b[0], nu = b[1], rho = b[2], sg = b[3];
            Poly inner = m.VW(K, Lx, rho, sg) - m.VW(K, Lx, sg, rho) + ww(m, K, rho, Lx, sg) - ww(m, K, sg, Lx, rho);
            acc.add_product(m.E(I, mu) * m.E(J, nu), inner, Rational(s, 8));
        });
        out.push_back(compare_polys("lagrangian.n4.epsilon_form", "epsilon form of the Lagrangian density",
                                    acc.finish(), L3));
    }

    // Inverse-frame form at rational frames.
    std::size_t mism = 0;
    for (int t = 0; t < trials; ++t) {
        RMatrix e = random_vielbein(n, seed + 7919ULL * static_cast<std::uint64_t>(t));
        RMatrix inv = inverse(e);
        Rational det = determinant(e);
        Substitution at;
        for (int I = 0; I < n; ++I)
            for (int mu = 0; mu < n; ++mu) at.emplace(m.e(I, mu), Poly(e[I][mu]));
        PolyAccumulator acc(m.chart().id());
        for (int I = 0; I < n; ++I)
            for (int J = 0; J < n; ++J)
                for (int mu = 0; mu < n; ++mu)
                    for (int nu = 0; nu < n; ++nu) {
                        Rational c = half() * det * (inv[mu][I] * inv[nu][J] - inv[nu][I] * inv[mu][J]);
                        if (!c.is_zero()) acc.add(m.VW(I, J, mu, nu) + ww(m, I, mu, J, nu), c);
                    }
        mism += (acc.finish() - L3.substitute(at)).size();
    }
    out.push_back({"lagrangian." + tag + ".inverse_frame_form", "inverse-frame form of the Lagrangian density", mism,
                   true, std::to_string(trials) + " frames"});
    return out;
}

std::vector<CheckOutcome> hamiltonian_checks(const PalatiniContext& ctx) {
    const Model& m = ctx.model();
    const int n = m.n();
    const std::string tag = n == 3 ? "n3" : "n4";
    std::vector<CheckOutcome> out;
    const Substitution& C = ctx.constraint();
    const Poly& H = ctx.hamiltonian();

    PolyAccumulator pz(m.chart().id()), chain1(m.chart().id()), chain2(m.chart().id());
    pz.add(m.K());
    chain1.add(m.K());
    chain2.add(m.K());
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
            for (int I = 0; I < n; ++I) pz.add_product(m.PE(I, mu, nu), m.VE(I, nu, mu) + we(m, I, nu, mu));
            for (int I = 0; I < n; ++I)
                for (int J = 0; J < n; ++J) {
                    if (I == J) continue;
                    Poly P = m.PW(I, J, mu, nu);
                    Poly Z = m.VW(I, J, nu, mu) + ww(m, I, nu, J, mu) - ww(m, J, nu, I, mu);
                    pz.add_product(P, Z);
                    chain1.add_product(P, Z);
                    chain1.add_product(P, m.VW(I, J, nu, mu) + ww(m, I, nu, J, mu), Rational(-1));
                    chain2.add_product(P, ww(m, J, nu, I, mu), Rational(-1));
                }
        }
    Poly W = pz.finish() - lagrangian_density(m) - H;
    out.push_back(expect_zero("hamiltonian." + tag + ".w_check",
                              "pairing minus Lagrangian equals the Hamiltonian on the constraint surface",
                              W.substitute(C)));
    out.push_back(compare_polys("hamiltonian." + tag + ".chain_velocity_form",
                                "Hamiltonian before velocity cancellation", chain1.finish().substitute(C), H));
    out.push_back(compare_polys("hamiltonian." + tag + ".chain_momentum_form",
                                "Hamiltonian in momentum form", chain2.finish().substitute(C), H));
    bool momentum_free = true;
    for (VarId v : H.variables())
        if (m.chart().info(v).role == Role::Momentum) momentum_free = false;
    out.push_back({"hamiltonian." + tag + ".momentum_free", "Hamiltonian carries no momentum variables",
                   momentum_free ? 0u : 1u, true, {}});
    Substitution zero;
    for (int p = 0; p < m.pairs(); ++p)
        for (int a = 0; a < n; ++a) zero.emplace(m.w(p, a), Poly());
    out.push_back(compare_polys("hamiltonian." + tag + ".vacuum", "Hamiltonian reduces to kappa at zero connection",
                                H.substitute(zero), m.K()));
    Form dHC = pullback(m.chart(), C, ctx.dH());
    std::size_t dp = 0;
    for (const auto& [b, p] : dHC.terms())
        if (m.chart().info(b[0]).role == Role::Momentum) dp += p.size();
    out.push_back({"hamiltonian." + tag + ".dH_momentum_free", "Hamiltonian differential has no momentum terms", dp,
                   true, {}});
    return out;
}

std::vector<CheckOutcome> dH_checks(const PalatiniContext& ctx) {
    const Model& m = ctx.model();
    const int n = m.n();
    std::vector<CheckOutcome> out;
    const Form& dH = ctx.dH();
    const auto& h = m.h();

    if (n == 3) {
        // Third term of the product-rule split: -d(E) omega omega.
        Form third(1), second(1);
        for (int I = 0; I < 3; ++I)
            for (int J = 0; J < 3; ++J)
                for (int mu = 0; mu < 3; ++mu)
                    for (int nu = 0; nu < 3; ++nu) {
                        const Poly& E = m.density(I, J, mu, nu);
                        if (E.is_zero()) continue;
                        Poly q = ww(m, J, mu, I, nu);
                        third -= q * scalar_d(m, E);
                        second -= E * scalar_d(m, q);
                    }
        Form third_disp(1), second_disp_a(1), second_disp_b(1), dH_disp = m.dK();
        eps_eps(3, [&](Perm a, Perm b, int s) {
            int I = a[0], J = a[1], M = a[2];
            int mu = b[0], nu = b[1], lam = b[2];
            Rational hs(s, 2);
            // (1/2) eps_{IJM} eps^{mu nu lambda} omega^J_{mu K} omega^{KI}_nu de^M_lambda
            third_disp += ww(m, J, mu, I, nu) * m.dE(M, lam).scaled(hs);
            // -eps_{IJM} eps^{mu nu lambda} e^M_lambda omega^J_{nu K} domega^{KI}_mu
            for (int K = 0; K < 3; ++K)
                second_disp_a -= m.E(M, lam) * m.Wmix(J, nu, K) * m.dW(K, I, mu).scaled(Rational(s));
            // -eps_{IJK} eps^{mu nu rho} e^K_rho omega^J_{nu M} domega^{MI}_mu  (same indices renamed)
            for (int Mx = 0; Mx < 3; ++Mx)
                second_disp_b -= m.E(a[2], b[2]) * m.Wmix(J, nu, Mx) * m.dW(Mx, I, mu).scaled(Rational(s));
        });
        // dH_disp: dkappa + (1/2) eps_{IJM} eps^{mu nu lambda} omega omega de^M_lambda
        //       + (1/2) eps^{mu nu rho} eps_{LJI} e^K_rho omega_nu^L_K domega^{IJ}_mu
        Form helper_c(1), helper_a(1), helper_b(1);
        eps_eps(3, [&](Perm a, Perm b, int s) {
            Rational hs(s, 2);
            {
                int Lx = a[0], J = a[1], I = a[2];
                int mu = b[0], nu = b[1], rho = b[2];
                for (int K = 0; K < 3; ++K)
                    helper_c += m.E(K, rho) * m.Wmix(Lx, nu, K) * m.dW(I, J, mu).scaled(hs);
            }
            {
                // eps^{mu rho sigma} eps_{IJK} e^I_mu omega_sigma^J_M domega_rho^{MK}
                int I = a[0], J = a[1], K = a[2];
                int mu = b[0], rho = b[1], sg = b[2];
                for (int M = 0; M < 3; ++M)
                    helper_a += m.E(I, mu) * m.Wmix(J, sg, M) * m.dW(M, K, rho).scaled(Rational(s));
            }
            {
                // -(1/2) eps^{mu rho sigma} eps_{LJK} e^I_mu omega_sigma^L_I domega_rho^{JK}
                int Lx = a[0], J = a[1], K = a[2];
                int mu = b[0], rho = b[1], sg = b[2];
                for (int I = 0; I < 3; ++I)
                    helper_b -= m.E(I, mu) * m.Wmix(Lx, sg, I) * m.dW(J, K, rho).scaled(hs);
            }
        });
        dH_disp += third_disp + helper_c;
        (void)h;
        out.push_back(compare_forms("dH.n3.display", "dreibein Hamiltonian differential", dH, dH_disp));
        out.push_back(compare_forms("dH.n3.third_term", "dreibein density-differential term", third, third_disp));
        out.push_back(compare_forms("dH.n3.second_term_a", "dreibein connection-differential term, first form", second,
                                    second_disp_a));
        out.push_back(compare_forms("dH.n3.second_term_b", "dreibein connection-differential term, relabelled form",
                                    second, second_disp_b));
        out.push_back(compare_forms("dH.n3.helper_ab", "dreibein connection identity, first equality", helper_a,
                                    helper_b));
        out.push_back(compare_forms("dH.n3.helper_bc", "dreibein connection identity, second equality", helper_b,
                                    helper_c));
        out.push_back(compare_forms("dH.n3.helper_second", "dreibein connection term via the identity", second,
                                    helper_c));
        out.push_back(reported(compare_forms("dH.n3.display_negated_field_terms",
                                             "dreibein Hamiltonian differential with both field terms negated", dH,
                                             m.dK() - third_disp - helper_c)));
    } else {
        Form de_term(1), dw_term(1), helper_a(1), helper_b(1), chain_c(1), chain_d(1), chain_e(1), line3(1);
        eps_eps(4, [&](Perm a, Perm b, int s) {
            Rational hs(s, 2);
            Rational fs(s);
            {
                int I = a[0], J = a[1], K = a[2], Lx = a[3];
                int mu = b[0], nu = b[1], rho = b[2], sg = b[3];
                // -(1/2) eps eps e^K_rho omega^J_{mu M} omega^{MI}_nu de^L_sigma
                de_term -= (m.E(K, rho) * ww(m, J, mu, I, nu)) * m.dE(Lx, sg).scaled(hs);
                for (int N = 0; N < 4; ++N) {
                    // (1/2) eps eps e^K_rho e^N_nu omega_sigma^L_N domega^{IJ}_mu
                    dw_term += (m.E(K, rho) * m.E(N, nu) * m.Wmix(Lx, sg, N)) * m.dW(I, J, mu).scaled(hs);
                    // (1/2) eps eps e^K_rho e^L_sigma omega^J_{nu M} domega^{MI}_mu  (display line 3)
                    line3 += (m.E(K, rho) * m.E(Lx, sg) * m.Wmix(J, nu, N)) * m.dW(N, I, mu).scaled(hs);
                }
            }
            {
                // eps^{mu nu rho sigma} eps_{IJKL} e^I_mu e^J_nu omega_sigma^K_M domega_rho^{ML}
                int I = a[0], J = a[1], K = a[2], Lx = a[3];
                int mu = b[0], nu = b[1], rho = b[2], sg = b[3];
                for (int M = 0; M < 4; ++M)
                    helper_a += (m.E(I, mu) * m.E(J, nu) * m.Wmix(K, sg, M)) * m.dW(M, Lx, rho).scaled(fs);
            }
            {
                // -eps^{mu nu rho sigma} eps_{INKL} e^I_mu e^J_nu omega_sigma^N_J domega_rho^{KL}
                int I = a[0], N = a[1], K = a[2], Lx = a[3];
                int mu = b[0], nu = b[1], rho = b[2], sg = b[3];
                for (int J = 0; J < 4; ++J)
                    helper_b -= (m.E(I, mu) * m.E(J, nu) * m.Wmix(N, sg, J)) * m.dW(K, Lx, rho).scaled(fs);
            }
            {
                // eps_{IJKL} eps^{mu nu rho sigma} e^K_rho e^L_sigma omega^J_{nu M} domega_mu^{MI}
                int I = a[0], J = a[1], K = a[2], Lx = a[3];
                int mu = b[0], nu = b[1], rho = b[2], sg = b[3];
                for (int M = 0; M < 4; ++M)
                    chain_c += (m.E(K, rho) * m.E(Lx, sg) * m.Wmix(J, nu, M)) * m.dW(M, I, mu).scaled(fs);
            }
            {
                // -eps^{mu nu rho sigma} eps_{IJKN} e^K_rho e^L_nu omega_sigma^N_L domega_mu^{IJ}
                int I = a[0], J = a[1], K = a[2], N = a[3];
                int mu = b[0], nu = b[1], rho = b[2], sg = b[3];
                for (int Lx = 0; Lx < 4; ++Lx)
                    chain_d -= (m.E(K, rho) * m.E(Lx, nu) * m.Wmix(N, sg, Lx)) * m.dW(I, J, mu).scaled(fs);
            }
            {
                // -eps^{mu nu rho sigma} eps_{IJKL} e^K_rho e^N_nu omega_sigma^L_N domega_mu^{IJ}
                int I = a[0], J = a[1], K = a[2], Lx = a[3];
                int mu = b[0], nu = b[1], rho = b[2], sg = b[3];
                for (int N = 0; N < 4; ++N)
                    chain_e -= (m.E(K, rho) * m.E(N, nu) * m.Wmix(Lx, sg, N)) * m.dW(I, J, mu).scaled(fs);
            }
        });
        Form dH_disp = m.dK() + de_term + dw_term;
        Form ext_der = m.dK() + de_term + line3;
        out.push_back(compare_forms("dH.n4.display", "vierbein Hamiltonian differential", dH, dH_disp));
        out.push_back(compare_forms("dH.n4.expanded", "vierbein Hamiltonian differential before relabelling", dH,
                                    ext_der));
        out.push_back(compare_forms("dH.n4.helper", "vierbein connection identity", helper_a, helper_b));
        out.push_back(compare_forms("dH.n4.chain_ab", "vierbein connection chain, first step", chain_c, -helper_a));
        out.push_back(compare_forms("dH.n4.chain_bc", "vierbein connection chain, second step", -helper_a, -helper_b));
        out.push_back(compare_forms("dH.n4.chain_cd", "vierbein connection chain, third step", -helper_b, chain_d));
        out.push_back(compare_forms("dH.n4.chain_de", "vierbein connection chain, relabelling", chain_d, chain_e));
        out.push_back(reported(compare_forms("dH.n4.display_negated_connection_term",
                                             "vierbein Hamiltonian differential with the connection term negated", dH,
                                             m.dK() + de_term - dw_term)));
    }
    return out;
}

namespace {

struct HamiltonBlocks {
    std::vector<Poly> dx, de, dw;
    Poly dk;
};

HamiltonBlocks blocks_of(const Model& m, const Form& r) {
    HamiltonBlocks b;
    b.dx = block(r, x_basis(m));
    b.de = block(r, e_basis(m));
    b.dw = block(r, w_basis(m));
    int s;
    b.dk = r.coefficient(Blade::sorted({m.kappa()}, s));
    return b;
}

HamiltonBlocks substitute(const HamiltonBlocks& b, const Substitution& s) {
    HamiltonBlocks o;
    for (const auto& p : b.dx) o.dx.push_back(p.substitute(s));
    for (const auto& p : b.de) o.de.push_back(p.substitute(s));
    for (const auto& p : b.dw) o.dw.push_back(p.substitute(s));
    o.dk = b.dk.substitute(s);
    return o;
}

}  // namespace

std::vector<CheckOutcome> hamilton_equation_checks(const PalatiniContext& ctx) {
    const Model& m = ctx.model();
    const int n = m.n();
    std::vector<CheckOutcome> out;
    const Form& R = ctx.hamilton_residual();
    HamiltonBlocks B = blocks_of(m, R);
    const std::string tag = n == 3 ? "n3" : "n4";
    const std::string model_name = n == 3 ? "dreibein" : "vierbein";

    std::size_t other = R.term_count();
    for (const auto* v : {&B.dx, &B.de, &B.dw})
        for (const auto& p : *v) other -= p.size();
    other -= B.dk.size();
    out.push_back({"hamilton." + tag + ".kappa_block", model_name + " Hamilton system, kappa component",
                   B.dk.size() + other, true, {}});

    auto Te = [&](int I, int nu, int mu) { return m.ThetaE(I, nu, mu); };
    auto Tw = [&](int I, int J, int nu, int mu) { return m.ThetaW(I, J, nu, mu); };

    if (n == 3) {
        // sw: sign of the connection term as displayed (+1) or as the engine's dH gives it (-1).
        auto frame = [&](int sw) {
            return e_indexed(m, [&](int Lf, int alf) {
                PolyAccumulator acc(m.chart().id());
                eps_eps(3, [&](Perm a, Perm b, int s) {
                    if (a[2] != Lf || b[2] != alf) return;
                    int I = a[0], J = a[1], mu = b[0], nu = b[1];
                    acc.add(Tw(I, J, nu, mu) + ww(m, J, mu, I, nu).scaled(Rational(sw)), Rational(s));
                });
                return acc.finish();
            });
        };
        auto connection = [&](int sw) {
            return w_indexed(m, [&](int If, int Jf, int muf) {
                PolyAccumulator acc(m.chart().id());
                eps_eps(3, [&](Perm a, Perm b, int s) {
                    if (a[0] != If || a[1] != Jf || b[0] != muf) return;
                    int Lx = a[2], nu = b[1], al = b[2];
                    acc.add(Te(Lx, nu, al), Rational(s));
                    for (int K = 0; K < 3; ++K) acc.add_product(m.E(K, al), m.Wmix(Lx, nu, K), Rational(s * sw));
                });
                return acc.finish();
            });
        };
        // c: coefficient of the Theta-Theta term relative to -Upsilon.
        auto base = [&](int su, Rational c) {
            return x_indexed(m, [&](int rho) {
                PolyAccumulator acc(m.chart().id());
                acc.add(m.Ups(rho), Rational(su));
                eps_eps(3, [&](Perm a, Perm b, int s) {
                    int I = a[0], J = a[1], Lx = a[2], mu = b[0], nu = b[1], al = b[2];
                    acc.add_product(Tw(I, J, nu, mu), Te(Lx, rho, al), c * Rational(s));
                    acc.add_product(Tw(I, J, rho, mu), Te(Lx, nu, al), -c * Rational(s));
                });
                return acc.finish();
            });
        };
        out.push_back(compare_blocks("hamilton.n3.frame_block", "dreibein Hamilton system, frame-differential block",
                                     B.de, frame(1)));
        out.push_back(compare_blocks("hamilton.n3.connection_block",
                                     "dreibein Hamilton system, connection-differential block", B.dw, connection(1)));
        out.push_back(compare_blocks("hamilton.n3.upsilon_block", "dreibein Hamilton system, base-differential block",
                                     B.dx, base(-1, Rational(-1))));
        out.push_back(reported(compare_blocks("hamilton.n3.frame_block_negated_connection",
                                              "dreibein frame block with the connection term negated", B.de,
                                              frame(-1))));
        out.push_back(reported(compare_blocks("hamilton.n3.connection_block_negated_connection",
                                              "dreibein connection block with the connection term negated", B.dw,
                                              connection(-1))));
        out.push_back(reported(compare_blocks("hamilton.n3.upsilon_block_half",
                                              "dreibein base block with the half-weighted quadratic term", B.dx,
                                              base(1, Rational(-1, 2)))));
    } else {
        auto frame = e_indexed(m, [&](int Lf, int sgf) {
            PolyAccumulator acc(m.chart().id());
            eps_eps(4, [&](Perm a, Perm b, int s) {
                if (a[3] != Lf || b[3] != sgf) return;
                int I = a[0], J = a[1], K = a[2], mu = b[0], nu = b[1], rho = b[2];
                acc.add_product(m.E(K, rho), Tw(I, J, mu, nu) + ww(m, I, mu, J, nu), Rational(s));
            });
            return acc.finish();
        });
        auto frame_pre = e_indexed(m, [&](int Lf, int sgf) {
            PolyAccumulator acc(m.chart().id());
            eps_eps(4, [&](Perm a, Perm b, int s) {
                if (a[3] != Lf || b[3] != sgf) return;
                int I = a[0], J = a[1], K = a[2], mu = b[0], nu = b[1], rho = b[2];
                acc.add_product(m.E(K, rho), Tw(I, J, nu, mu), Rational(-s));
                acc.add_product(m.E(K, rho), ww(m, J, mu, I, nu), Rational(s));
            });
            return acc.finish();
        });
        auto connection = [&](int sw) {
            return w_indexed(m, [&](int If, int Jf, int muf) {
                PolyAccumulator acc(m.chart().id());
                eps_eps(4, [&](Perm a, Perm b, int s) {
                    if (a[0] != If || a[1] != Jf || b[0] != muf) return;
                    int K = a[2], Lx = a[3], nu = b[1], rho = b[2], sg = b[3];
                    acc.add_product(m.E(K, rho), Te(Lx, nu, sg) + we(m, Lx, nu, sg).scaled(Rational(sw)),
                                    Rational(s));
                });
                return acc.finish();
            });
        };
        auto connection_pre = w_indexed(m, [&](int If, int Jf, int muf) {
            PolyAccumulator acc(m.chart().id());
            eps_eps(4, [&](Perm a, Perm b, int s) {
                if (a[0] != If || a[1] != Jf || b[0] != muf) return;
                int K = a[2], Lx = a[3], nu = b[1], rho = b[2], sg = b[3];
                acc.add_product(m.E(K, rho), Te(Lx, nu, sg), Rational(s));
                for (int N = 0; N < 4; ++N)
                    acc.add_product(m.E(K, rho) * m.E(N, nu), m.Wmix(Lx, sg, N), Rational(-s));
            });
            return acc.finish();
        });
        auto base = [&](int su) {
            return x_indexed(m, [&](int lam) {
                PolyAccumulator acc(m.chart().id());
                acc.add(m.Ups(lam), Rational(su));
                eps_eps(4, [&](Perm a, Perm b, int s) {
                    int I = a[0], J = a[1], K = a[2], Lx = a[3];
                    int mu = b[0], nu = b[1], rho = b[2], sg = b[3];
                    Poly q = Tw(I, J, nu, mu) * Te(Lx, lam, sg) - Tw(I, J, lam, mu) * Te(Lx, nu, sg);
                    acc.add_product(m.E(K, rho), q, Rational(-s, 2));
                });
                return acc.finish();
            });
        };
        out.push_back(compare_blocks("hamilton.n4.frame_block", "vierbein Hamilton system, frame-differential block",
                                     B.de, frame));
        out.push_back(compare_blocks("hamilton.n4.frame_block_unreduced",
                                     "vierbein Hamilton system, frame-differential block before reduction", B.de,
                                     frame_pre));
        out.push_back(compare_blocks("hamilton.n4.connection_block",
                                     "vierbein Hamilton system, connection-differential block", B.dw, connection(1)));
        out.push_back(compare_blocks("hamilton.n4.connection_block_unreduced",
                                     "vierbein Hamilton system, connection-differential block before reduction", B.dw,
                                     connection_pre));
        out.push_back(compare_blocks("hamilton.n4.upsilon_block", "vierbein Hamilton system, base-differential block",
                                     B.dx, base(-1)));
        out.push_back(reported(compare_blocks("hamilton.n4.connection_block_negated_connection",
                                              "vierbein connection block with the connection term negated", B.dw,
                                              connection(-1))));
        out.push_back(reported(compare_blocks("hamilton.n4.upsilon_block_positive",
                                              "vierbein base block with Upsilon entering positively", B.dx,
                                              base(1))));
    }
    return out;
}

std::vector<CheckOutcome> einstein_checks(const PalatiniContext& ctx) {
    const Model& m = ctx.model();
    const int n = m.n();
    const std::string tag = n == 3 ? "n3" : "n4";
    const std::string model_name = n == 3 ? "dreibein" : "vierbein";
    std::vector<CheckOutcome> out;
    HamiltonBlocks B = blocks_of(m, ctx.hamilton_residual());

    auto curv = e_indexed(m, [&](int Lf, int sf) {
        PolyAccumulator acc(m.chart().id());
        eps_eps(n, [&](Perm a, Perm b, int s) {
            if (a[n - 1] != Lf || b[n - 1] != sf) return;
            int I = a[0], J = a[1], mu = b[0], nu = b[1];
            Poly F = curvature(m, I, J, nu, mu);
            if (n == 3) acc.add(F, Rational(s));
            else acc.add_product(m.E(a[2], b[2]), F, Rational(s));
        });
        return acc.finish();
    });
    auto tors = w_indexed(m, [&](int If, int Jf, int muf) {
        PolyAccumulator acc(m.chart().id());
        eps_eps(n, [&](Perm a, Perm b, int s) {
            if (a[0] != If || a[1] != Jf || b[0] != muf) return;
            int Lx = a[n - 1], nu = b[1], al = b[n - 1];
            Poly T = torsion(m, Lx, nu, al);
            if (n == 3) acc.add(T, Rational(s));
            else acc.add_product(m.E(a[2], b[2]), T, Rational(s));
        });
        return acc.finish();
    });

    HamiltonBlocks Z = substitute(B, covariant_substitution(m));
    HamiltonBlocks V = substitute(B, jet_substitution(m));
    out.push_back(compare_blocks("einstein." + tag + ".curvature_covariant",
                                 model_name + " curvature equation with covariant tangent components", Z.de, curv));
    out.push_back(compare_blocks("einstein." + tag + ".torsion_covariant",
                                 model_name + " torsion equation with covariant tangent components", Z.dw, tors));
    out.push_back(compare_blocks("einstein." + tag + ".curvature_jet",
                                 model_name + " curvature equation with jet tangent components", V.de, curv));
    out.push_back(compare_blocks("einstein." + tag + ".torsion_jet",
                                 model_name + " torsion equation with jet tangent components", V.dw, tors));

    // Euler-Lagrange equations of the Lagrangian density, with the connection momentum as a total derivative.
    const Poly L = lagrangian_density(m);
    std::vector<Poly> el_w, el_e;
    for (int p = 0; p < m.pairs(); ++p)
        for (int nu = 0; nu < n; ++nu) {
            PolyAccumulator acc(m.chart().id());
            acc.add(L.derivative(m.w(p, nu)));
            for (int mu = 0; mu < n; ++mu) {
                Poly q = L.derivative(m.v_w(p, mu, nu));
                for (int K = 0; K < n; ++K)
                    for (int r = 0; r < n; ++r) acc.add_product(q.derivative(m.e(K, r)), m.VE(K, mu, r), Rational(-1));
            }
            el_w.push_back(acc.finish());
        }
    for (int I = 0; I < n; ++I)
        for (int r = 0; r < n; ++r) el_e.push_back(L.derivative(m.e(I, r)));
    auto el_outcome = [&](const std::string& id, const std::string& label, const HamiltonBlocks& b) {
        std::vector<Poly> eng = b.de, ref = el_e;
        eng.insert(eng.end(), b.dw.begin(), b.dw.end());
        ref.insert(ref.end(), el_w.begin(), el_w.end());
        return compare_blocks(id, label, eng, ref);
    };
    out.push_back(reported(el_outcome("einstein." + tag + ".euler_lagrange_displayed_hamiltonian",
                                      model_name + " Hamilton system against the Euler-Lagrange equations", V)));
    // kappa + p.v - L restricted to the constraint surface, which is 2 kappa - H there.
    const Poly plain = m.K().scaled(Rational(2)) - ctx.hamiltonian();
    const Form Rp = interior_sequence(ctx.hamilton_multivector(), ctx.omega_palatini()) -
                    exterior_derivative(m.chart(), Form::scalar(plain)).scaled(Rational(sign_n(n)));
    out.push_back(el_outcome("einstein." + tag + ".euler_lagrange_plain_legendre",
                             model_name + " Hamilton system of the plain Legendre transform against Euler-Lagrange",
                             substitute(blocks_of(m, Rp), jet_substitution(m))));
    return out;
}

std::vector<CheckOutcome> premultisymplectic_checks(const PalatiniContext& ctx) {
    const Model& m = ctx.model();
    const int n = m.n();
    std::vector<CheckOutcome> out;
    const auto& vol = m.vol();
    const Form& theta = ctx.theta_premulti();
    const Form& omega = ctx.omega_premulti();
    auto Te = [&](int I, int nu, int mu) { return m.ThetaE(I, nu, mu); };
    auto Tw = [&](int I, int J, int nu, int mu) { return m.ThetaW(I, J, nu, mu); };
    HamiltonBlocks B = blocks_of(m, ctx.premulti_residual());

    if (n == 3) {
        Form disp(3), t1_aa(3), t2_aa(3), t1_lem(3), t2_lem(3), om(4), dt1_alt(4);
        eps_eps(3, [&](Perm a, Perm b, int s) {
            int I = a[0], J = a[1], K = a[2];
            int mu = b[0], rho = b[1], sg = b[2];
            Rational fs(s);
            disp += m.E(I, mu) * wedge(m.dW(J, K, sg), vol.beta_mu[rho]).scaled(fs);
            disp += (m.E(I, mu) * ww(m, J, rho, K, sg)) * vol.beta.scaled(fs);
            t1_lem += (m.E(I, mu) * ww(m, J, rho, K, sg)) * vol.beta.scaled(fs);
            t2_lem -= m.E(I, mu) * wedge(m.dW(J, K, rho), vol.beta_mu[sg]).scaled(fs);
            om += w3(m.dE(I, mu), m.dW(J, K, sg), vol.beta_mu[rho]).scaled(fs);
            om += ww(m, J, rho, K, sg) * wedge(m.dE(I, mu), vol.beta).scaled(fs);
            dt1_alt += ww(m, J, rho, K, sg) * wedge(m.dE(I, mu), vol.beta).scaled(fs);
            {
                // -eps_{LJK} eps^{mu rho sigma} e^I_mu omega_sigma^L_I domega_rho^{JK} ^ beta
                int Lx = a[0];
                for (int Ix = 0; Ix < 3; ++Ix) {
                    om -= (m.E(Ix, mu) * m.Wmix(Lx, sg, Ix)) * wedge(m.dW(J, K, rho), vol.beta).scaled(fs);
                    dt1_alt -= (m.E(Ix, mu) * m.Wmix(Lx, rho, Ix)) * wedge(m.dW(J, K, sg), vol.beta).scaled(fs);
                }
            }
        });
        for (int I = 0; I < 3; ++I)
            for (int J = 0; J < 3; ++J)
                for (int K = 0; K < 3; ++K) {
                    int s = m.eps({I, J, K});
                    if (s == 0) continue;
                    for (int mu = 0; mu < 3; ++mu)
                        for (int rho = 0; rho < 3; ++rho)
                            for (int sg = 0; sg < 3; ++sg) {
                                Form dxs = w3(m.dX(mu), m.dX(rho), m.dX(sg));
                                if (!dxs.is_zero())
                                    t1_aa += (m.E(I, mu) * ww(m, J, rho, K, sg)) * dxs.scaled(Rational(s));
                            }
                    for (int mu = 0; mu < 3; ++mu)
                        for (int sg = 0; sg < 3; ++sg)
                            t2_aa += m.E(I, mu) * w3(m.dX(mu), m.dW(J, K, sg), m.dX(sg)).scaled(Rational(s));
                }
        // d theta_1 computed from the lemma form.
        Form dt1 = exterior_derivative(m.chart(), t1_lem);
        out.push_back(compare_forms("premulti.n3.theta_display", "dreibein action form in volume-form basis", theta,
                                    disp));
        out.push_back(compare_forms("premulti.n3.theta_split", "dreibein action form as two coordinate terms", theta,
                                    t1_aa + t2_aa));
        out.push_back(compare_forms("premulti.n3.theta1_lemma", "dreibein quadratic-connection term in beta basis",
                                    t1_lem, t1_aa));
        out.push_back(compare_forms("premulti.n3.theta2_lemma", "dreibein derivative term in beta basis", t2_lem,
                                    t2_aa));
        out.push_back(compare_forms("premulti.n3.omega_display", "dreibein pre-multisymplectic form", omega, om));
        out.push_back(compare_forms("premulti.n3.dtheta1_alternative",
                                    "dreibein quadratic-term differential as used for the interior product", dt1,
                                    dt1_alt));

        // Blocks of X ⌟ omega against the displayed system.
        auto p1 = e_indexed(m, [&](int If, int muf) {
            PolyAccumulator acc(m.chart().id());
            eps_eps(3, [&](Perm a, Perm b, int s) {
                if (a[0] != If || b[0] != muf) return;
                int J = a[1], K = a[2], rho = b[1], sg = b[2];
                acc.add(Tw(J, K, rho, sg) + ww(m, J, rho, K, sg), Rational(s));
            });
            return acc.finish();
        });
        auto p2 = w_indexed(m, [&](int Jf, int Kf, int sgf) {
            PolyAccumulator acc(m.chart().id());
            eps_eps(3, [&](Perm a, Perm b, int s) {
                if (a[1] != Jf || a[2] != Kf || b[2] != sgf) return;
                int I = a[0], mu = b[0], rho = b[1];
                acc.add(Te(I, rho, mu), Rational(s));
                for (int Lx = 0; Lx < 3; ++Lx) acc.add_product(m.E(Lx, mu), m.Wmix(I, rho, Lx), Rational(s));
            });
            return acc.finish();
        });
        auto ups = [&](int lam, int I, int J, int K, int mu, int rho, int sg) {
            PolyAccumulator acc(m.chart().id());
            for (int Lx = 0; Lx < 3; ++Lx) acc.add_product(m.E(Lx, mu) * m.Wmix(I, rho, Lx), Tw(J, K, lam, sg));
            acc.add_product(ww(m, J, rho, K, sg), Te(I, lam, mu), Rational(-1));
            acc.add_product(Tw(J, K, lam, sg), Te(I, rho, mu));
            acc.add_product(Tw(J, K, rho, sg), Te(I, lam, mu), Rational(-1));
            return acc.finish();
        };
        auto p3 = x_indexed(m, [&](int lam) {
            PolyAccumulator acc(m.chart().id());
            eps_eps(3, [&](Perm a, Perm b, int s) {
                acc.add(ups(lam, a[0], a[1], a[2], b[0], b[1], b[2]), Rational(s));
            });
            return acc.finish();
        });
        out.push_back(compare_blocks("premulti.n3.frame_block", "dreibein pre-multisymplectic system, frame block",
                                     B.de, p1));
        out.push_back(compare_blocks("premulti.n3.connection_block",
                                     "dreibein pre-multisymplectic system, connection block", B.dw, p2));
        out.push_back(compare_blocks("premulti.n3.upsilon_block", "dreibein pre-multisymplectic system, base block",
                                     B.dx, p3));

        // The base equation is a combination of the first two.
        std::size_t auto_res = 0;
        for (int lam = 0; lam < 3; ++lam) {
            PolyAccumulator acc(m.chart().id());
            acc.add(p3[lam]);
            for (int J = 0; J < 3; ++J)
                for (int K = 0; K < 3; ++K)
                    for (int sg = 0; sg < 3; ++sg) {
                        if (J == K) continue;
                        // p2 over ordered (J, K): antisymmetric in J, K.
                        int p = m.stored(J, K);
                        Poly line = p2[p * 3 + sg].scaled(Rational(Model::pair_sign(J, K)));
                        acc.add_product(line, Tw(J, K, lam, sg), Rational(-1));
                    }
            for (int I = 0; I < 3; ++I)
                for (int mu = 0; mu < 3; ++mu) acc.add_product(p1[I * 3 + mu], Te(I, lam, mu));
            auto_res += acc.finish().size();
        }
        out.push_back({"premulti.n3.upsilon_automatic", "dreibein base equation follows from the other two",
                       auto_res, true, {}});
    } else {
        Form disp(4), lines(4), f030_lhs(4), f030_mid(4), f030_aa(4), az_lhs(4), az_rhs(4), ray(5);
        eps_eps(4, [&](Perm a, Perm b, int s) {
            int I = a[0], J = a[1], K = a[2], Lx = a[3];
            int mu = b[0], nu = b[1], rho = b[2], sg = b[3];
            Rational hs(s, 2), fs(s);
            Poly ee = m.E(I, mu) * m.E(J, nu);
            disp += ee * wedge(m.dW(K, Lx, rho), vol.beta_mu[sg]).scaled(hs);
            disp += (ee * ww(m, K, sg, Lx, rho)) * vol.beta.scaled(hs);
            f030_mid += ee * wedge(m.dW(K, Lx, rho), vol.beta_mu[sg]).scaled(hs);
            az_lhs += (ee * ww(m, K, sg, Lx, rho)) * vol.beta.scaled(fs);
            ray += m.E(I, mu) * w3(m.dE(J, nu), m.dW(K, Lx, rho), vol.beta_mu[sg]).scaled(fs);
            ray += (m.E(I, mu) * ww(m, K, sg, Lx, rho)) * wedge(m.dE(J, nu), vol.beta).scaled(fs);
            {
                // -eps^{mu nu rho sigma} eps_{INKL} e^I_mu e^J_nu omega_sigma^N_J domega_rho^{KL} ^ beta
                int N = a[1];
                for (int Jx = 0; Jx < 4; ++Jx)
                    ray -= (m.E(I, mu) * m.E(Jx, nu) * m.Wmix(N, sg, Jx)) *
                           wedge(m.dW(K, Lx, rho), vol.beta).scaled(fs);
            }
        });
        for (int I = 0; I < 4; ++I)
            for (int J = 0; J < 4; ++J)
                for (int K = 0; K < 4; ++K)
                    for (int Lx = 0; Lx < 4; ++Lx) {
                        int s = m.eps({I, J, K, Lx});
                        if (s == 0) continue;
                        for (int mu = 0; mu < 4; ++mu)
                            for (int nu = 0; nu < 4; ++nu) {
                                if (mu == nu) continue;
                                Poly ee = m.E(I, mu) * m.E(J, nu);
                                Form dxx = wedge(m.dX(mu), m.dX(nu));
                                for (int sg = 0; sg < 4; ++sg) {
                                    // dx^mu ^ dx^nu ^ domega^{KL}_sigma ^ dx^sigma (the KL reading)
                                    Form f = ee * w3(dxx, m.dW(K, Lx, sg), m.dX(sg));
                                    lines += f.scaled(Rational(s, 2));
                                    f030_lhs += f.scaled(Rational(s));
                                    f030_aa += f.scaled(Rational(s, 2));
                                }
                                for (int rho = 0; rho < 4; ++rho)
                                    for (int sg = 0; sg < 4; ++sg) {
                                        Form dx4 = w3(dxx, m.dX(rho), m.dX(sg));
                                        if (dx4.is_zero()) continue;
                                        Form f = (ee * ww(m, K, rho, Lx, sg)) * dx4;
                                        lines += f.scaled(Rational(s, 2));
                                        az_rhs += f.scaled(Rational(s, 2));
                                    }
                            }
                    }
        out.push_back(compare_forms("premulti.n4.theta_display", "vierbein action form in volume-form basis", theta,
                                    disp));
        out.push_back(compare_forms("premulti.n4.theta_coordinates", "vierbein action form in coordinate basis", theta,
                                    lines));
        out.push_back(compare_forms("premulti.n4.theta1_beta", "vierbein derivative term in beta basis", f030_lhs,
                                    f030_mid));
        out.push_back(compare_forms("premulti.n4.theta1_split", "vierbein derivative term against the split",
                                    f030_mid, f030_aa));
        out.push_back(compare_forms("premulti.n4.theta2_beta", "vierbein quadratic-connection term in beta basis",
                                    az_lhs, az_rhs));
        out.push_back(compare_forms("premulti.n4.omega_display", "vierbein pre-multisymplectic form", omega, ray));

        auto q1 = e_indexed(m, [&](int Jf, int nuf) {
            PolyAccumulator acc(m.chart().id());
            eps_eps(4, [&](Perm a, Perm b, int s) {
                if (a[1] != Jf || b[1] != nuf) return;
                int I = a[0], K = a[2], Lx = a[3], mu = b[0], rho = b[2], sg = b[3];
                acc.add_product(m.E(I, mu), Tw(K, Lx, sg, rho) + ww(m, K, sg, Lx, rho), Rational(s));
            });
            return acc.finish();
        });
        auto q2 = w_indexed(m, [&](int Kf, int Lf, int rhof) {
            PolyAccumulator acc(m.chart().id());
            eps_eps(4, [&](Perm a, Perm b, int s) {
                if (a[2] != Kf || a[3] != Lf || b[2] != rhof) return;
                int I = a[0], J = a[1], mu = b[0], nu = b[1], sg = b[3];
                acc.add_product(m.E(I, mu), Te(J, sg, nu) + we(m, J, sg, nu), Rational(s));
            });
            return acc.finish();
        });
        // sq: sign of the quadratic-connection term of Upsilon (displayed: -1).
        auto upsilon = [&](int sq) {
            return x_indexed(m, [&](int lam) {
                PolyAccumulator acc(m.chart().id());
                eps_eps(4, [&](Perm a, Perm b, int s) {
                    int I = a[0], J = a[1], K = a[2], Lx = a[3];
                    int mu = b[0], nu = b[1], rho = b[2], sg = b[3];
                    Poly u = we(m, J, rho, nu) * Tw(K, Lx, lam, sg) +
                             (ww(m, K, sg, Lx, rho) * Te(J, lam, nu)).scaled(Rational(sq)) +
                             Tw(K, Lx, lam, sg) * Te(J, rho, nu) - Tw(K, Lx, rho, sg) * Te(J, lam, nu);
                    acc.add_product(m.E(I, mu), u, Rational(s));
                });
                return acc.finish();
            });
        };
        auto q3 = upsilon(-1);
        out.push_back(compare_blocks("premulti.n4.frame_block", "vierbein pre-multisymplectic system, frame block",
                                     B.de, q1));
        out.push_back(compare_blocks("premulti.n4.connection_block",
                                     "vierbein pre-multisymplectic system, connection block", B.dw, q2));
        out.push_back(compare_blocks("premulti.n4.upsilon_block", "vierbein pre-multisymplectic system, base block",
                                     B.dx, q3));
        out.push_back(reported(compare_blocks("premulti.n4.upsilon_block_positive_quadratic",
                                              "vierbein base block with the quadratic-connection term positive", B.dx,
                                              upsilon(1))));
    }

    // X ⌟ omega evaluated on X_lambda vanishes: the base block is fixed by the other two.
    std::size_t automatic = 0;
    for (int lam = 0; lam < n; ++lam) {
        PolyAccumulator acc(m.chart().id());
        acc.add(B.dx[lam]);
        for (int I = 0; I < n; ++I)
            for (int mu = 0; mu < n; ++mu) acc.add_product(B.de[I * n + mu], m.ThetaE(I, lam, mu));
        for (int p = 0; p < m.pairs(); ++p)
            for (int mu = 0; mu < n; ++mu) acc.add_product(B.dw[p * n + mu], m.var(m.theta_w(p, lam, mu)));
        automatic += acc.finish().size();
    }
    out.push_back({std::string("premulti.") + (n == 3 ? "n3" : "n4") + ".base_block_dependent",
                   "base block is a combination of the frame and connection blocks", automatic, true, {}});
    return out;
}

std::vector<CheckOutcome> geometry_checks(const PalatiniContext& ctx, std::uint64_t seed, int trials) {
    const Model& m = ctx.model();
    const int n = m.n();
    const std::string tag = n == 3 ? "n3" : "n4";
    std::vector<CheckOutcome> out;

    // Flat data: omega = 0 and v = 0.
    Substitution flat;
    for (int a = 0; a < n; ++a) {
        for (int p = 0; p < m.pairs(); ++p) {
            flat.emplace(m.w(p, a), Poly());
            for (int b = 0; b < n; ++b) flat.emplace(m.v_w(p, a, b), Poly());
        }
        for (int I = 0; I < n; ++I)
            for (int b = 0; b < n; ++b) flat.emplace(m.v_e(I, a, b), Poly());
    }
    std::size_t flat_res = 0, anti = 0, dw_form = 0, f_form = 0, t_form = 0;
    for (int I = 0; I < n; ++I)
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu) {
                flat_res += torsion(m, I, mu, nu).substitute(flat).size();
                for (int J = 0; J < n; ++J) {
                    flat_res += curvature(m, I, J, mu, nu).substitute(flat).size();
                    anti += (curvature(m, I, J, mu, nu) + curvature(m, J, I, mu, nu)).size();
                    anti += (curvature(m, I, J, mu, nu) + curvature(m, I, J, nu, mu)).size();
                }
            }
    out.push_back({"geometry." + tag + ".flat", "flat data has zero curvature and torsion", flat_res, true, {}});
    out.push_back({"geometry." + tag + ".curvature_antisymmetry", "curvature is antisymmetric in both pairs", anti,
                   true, {}});

    // Form-level definitions on the base: d omega^{IJ} := v^{IJ}_{mu nu} dx^mu ^ dx^nu.
    auto one = [&](auto coeff) {
        Form f(1);
        for (int mu = 0; mu < n; ++mu) f += coeff(mu) * m.dX(mu);
        return f;
    };
    auto two = [&](auto coeff) {
        Form f(2);
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu)
                if (mu != nu) f += coeff(mu, nu) * wedge(m.dX(mu), m.dX(nu));
        return f;
    };
    for (int I = 0; I < n; ++I) {
        Form De = two([&](int mu, int nu) { return m.VE(I, mu, nu); });
        for (int J = 0; J < n; ++J)
            De += wedge(one([&](int mu) { return m.Wmix(I, mu, J); }), one([&](int mu) { return m.E(J, mu); }));
        Form Tc = two([&](int mu, int nu) { return torsion(m, I, mu, nu); }).scaled(half());
        t_form += (De - Tc).term_count();
        for (int J = 0; J < n; ++J) {
            if (I == J) continue;
            Form dw = two([&](int mu, int nu) { return m.VW(I, J, mu, nu); });
            Form F = dw, D1 = dw, D2 = dw;
            for (int K = 0; K < n; ++K) {
                Form wIK = one([&](int mu) { return m.Wmix(I, mu, K); });
                Form wJK = one([&](int mu) { return m.Wmix(J, mu, K); });
                Form wKJ = one([&](int mu) { return m.W(K, J, mu); });
                Form wKI = one([&](int mu) { return m.W(K, I, mu); });
                Form wIKu = one([&](int mu) { return m.W(I, K, mu); });
                F += wedge(wIK, wKJ);
                D1 += wedge(wIK, wKJ) + wedge(wJK, wIKu);
                D2 += wedge(wIK, wKJ) - wedge(wJK, wKI);
            }
            Form Fc = two([&](int mu, int nu) { return curvature(m, I, J, mu, nu); }).scaled(half());
            Form Dc = two([&](int mu, int nu) { return covariant_connection(m, I, J, mu, nu); }).scaled(half());
            f_form += (F - Fc).term_count();
            dw_form += (D1 - D2).term_count() + (D2 - Dc).term_count();
        }
    }
    out.push_back({"geometry." + tag + ".curvature_form", "curvature two-form against its components", f_form, true,
                   {}});
    out.push_back({"geometry." + tag + ".torsion_form", "covariant derivative of the frame against its components",
                   t_form, true, {}});
    out.push_back({"geometry." + tag + ".connection_derivative_form",
                   "covariant derivative of the connection against its components", dw_form, true, {}});

    std::size_t compat = 0, metric = 0;
    for (int t = 0; t < trials; ++t) {
        FrameSample s = random_frame_sample(n, seed + 104729ULL * static_cast<std::uint64_t>(t));
        for (const auto& r : compatibility_residual(s, m.h()))
            if (!r.is_zero()) ++compat;
        RMatrix g = spacetime_metric(s.e, m.h());
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (g[a][b] != g[b][a]) ++metric;
        Rational de = determinant(s.e);
        if (determinant(g) != Rational(m.h().signature_sign()) * de * de) ++metric;
    }
    out.push_back({"geometry." + tag + ".compatibility", "spin connection and Christoffel compatibility", compat, true,
                   std::to_string(trials) + " samples"});
    out.push_back({"geometry." + tag + ".metric", "pullback metric is symmetric with determinant sign", metric, true,
                   std::to_string(trials) + " samples"});
    return out;
}

std::vector<CheckOutcome> extended_hamiltonian_checks(const PalatiniContext& ctx) {
    const Model& m = ctx.model();
    const int n = m.n();
    const std::string tag = n == 3 ? "n3" : "n4";
    std::vector<CheckOutcome> out;
    ExtendedHamiltonian x = extended_hamiltonian(ctx);
    out.push_back(compare_polys("extended." + tag + ".on_constraints",
                                "extended Hamiltonian restricts to the Hamiltonian", x.H.substitute(ctx.constraint()),
                                ctx.hamiltonian()));
    std::size_t pw = 0, pe = 0, de = 0, dw = 0;
    for (int p = 0; p < m.pairs(); ++p)
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu)
                pw += (x.d_pw[(p * n + mu) * n + nu].scaled(half()) - m.var(m.lambda_w(p, nu, mu))).size();
    for (int I = 0; I < n; ++I)
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu) pe += (x.d_pe[(I * n + mu) * n + nu] - m.LamE(I, nu, mu)).size();
    // Frame and connection gradients from the parts.
    const Poly& H = ctx.hamiltonian();
    for (int I = 0; I < n; ++I)
        for (int mu = 0; mu < n; ++mu) {
            PolyAccumulator acc(m.chart().id());
            acc.add(H.derivative(m.e(I, mu)));
            for (int A = 0; A < n; ++A)
                for (int B = 0; B < n; ++B)
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b)
                            if (A != B) acc.add_product(m.LamW(A, B, b, a), m.density(A, B, a, b).derivative(m.e(I, mu)));
            de += (x.d_e[I * n + mu] - acc.finish()).size();
        }
    for (int p = 0; p < m.pairs(); ++p)
        for (int mu = 0; mu < n; ++mu) dw += (x.d_w[p * n + mu] - H.derivative(m.w(p, mu))).size();
    out.push_back({"extended." + tag + ".connection_velocity", "connection momentum derivative gives the multiplier",
                   pw, true, {}});
    out.push_back({"extended." + tag + ".frame_velocity", "frame momentum derivative gives the multiplier", pe, true,
                   {}});
    out.push_back({"extended." + tag + ".frame_gradient", "frame gradient carries the multiplier terms", de, true, {}});
    out.push_back({"extended." + tag + ".connection_gradient", "connection gradient equals the Hamiltonian gradient",
                   dw, true, {}});
    return out;
}

}  // namespace dwv
