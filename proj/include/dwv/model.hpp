#pragma once

#include "dwv/extcalc.hpp"
#include "dwv/indexalg.hpp"

#include <memory>
#include <vector>

namespace dwv {

/// De Donder–Weyl chart of vielbein gravity in n = 3 or 4 dimensions.
///
/// Coordinates, in order: x^mu, e^I_mu, omega^{IJ}_mu (I < J), kappa, p^{e_mu nu}_I,
/// p^{omega_mu nu}_{IJ} (I < J). Formal variables follow: Theta^I_{nu mu}, Theta^{IJ}_{nu mu},
/// Upsilon_nu, v^I_{mu nu}, v^{IJ}_{mu nu}, lambda^I_{nu mu}, lambda^{IJ}_{nu mu}.
///
/// Lie-algebra pairs are summed over all ordered (I, J) with antisymmetric extension; the
/// accessors taking (I, J) return the signed stored component and zero on I == J.
class Model {
public:
    static std::shared_ptr<const Model> build(int n);

    int n() const { return n_; }
    int pairs() const { return n_ * (n_ - 1) / 2; }
    const Chart& chart() const { return chart_; }
    const InternalMetric& h() const { return h_; }
    const VolumeForms& vol() const { return vol_; }

    /// Stored pair index of (I, J), I < J.
    int pair(int I, int J) const { return pair_index_[I * n_ + J]; }
    int pair_first(int p) const { return pair_I_[p]; }
    int pair_second(int p) const { return pair_J_[p]; }
    /// +1 for I < J, -1 for I > J, 0 for I == J.
    static int pair_sign(int I, int J) { return I < J ? 1 : (I > J ? -1 : 0); }
    int stored(int I, int J) const { return I < J ? pair(I, J) : pair(J, I); }

    VarId x(int mu) const { return x_[mu]; }
    VarId e(int I, int mu) const { return e_[I * n_ + mu]; }
    VarId w(int p, int mu) const { return w_[p * n_ + mu]; }
    VarId kappa() const { return kappa_; }
    VarId pe(int I, int mu, int nu) const { return pe_[(I * n_ + mu) * n_ + nu]; }
    VarId pw(int p, int mu, int nu) const { return pw_[(p * n_ + mu) * n_ + nu]; }
    VarId theta_e(int I, int nu, int mu) const { return te_[(I * n_ + nu) * n_ + mu]; }
    VarId theta_w(int p, int nu, int mu) const { return tw_[(p * n_ + nu) * n_ + mu]; }
    VarId upsilon(int nu) const { return ups_[nu]; }
    VarId v_e(int I, int mu, int nu) const { return ve_[(I * n_ + mu) * n_ + nu]; }
    VarId v_w(int p, int mu, int nu) const { return vw_[(p * n_ + mu) * n_ + nu]; }
    VarId lambda_e(int I, int nu, int mu) const { return le_[(I * n_ + nu) * n_ + mu]; }
    VarId lambda_w(int p, int nu, int mu) const { return lw_[(p * n_ + nu) * n_ + mu]; }

    Poly var(VarId v) const { return chart_.var(v); }
    Poly X(int mu) const { return var(x(mu)); }
    Poly E(int I, int mu) const { return var(e(I, mu)); }
    Poly K() const { return var(kappa_); }
    /// omega^{IJ}_mu.
    Poly W(int I, int J, int mu) const { return signed_pair(I, J, [&](int p) { return w(p, mu); }); }
    /// omega^I_{mu K} = omega_mu^I_K = omega^{IL}_mu h_{LK}.
    Poly Wmix(int I, int mu, int K) const { return W(I, K, mu).scaled(Rational(h_(K))); }
    Poly PE(int I, int mu, int nu) const { return var(pe(I, mu, nu)); }
    /// p^{omega_mu nu}_{IJ}.
    Poly PW(int I, int J, int mu, int nu) const {
        return signed_pair(I, J, [&](int p) { return pw(p, mu, nu); });
    }
    Poly ThetaE(int I, int nu, int mu) const { return var(theta_e(I, nu, mu)); }
    Poly ThetaW(int I, int J, int nu, int mu) const {
        return signed_pair(I, J, [&](int p) { return theta_w(p, nu, mu); });
    }
    Poly Ups(int nu) const { return var(ups_[nu]); }
    Poly VE(int I, int mu, int nu) const { return var(v_e(I, mu, nu)); }
    Poly VW(int I, int J, int mu, int nu) const {
        return signed_pair(I, J, [&](int p) { return v_w(p, mu, nu); });
    }
    Poly LamE(int I, int nu, int mu) const { return var(lambda_e(I, nu, mu)); }
    Poly LamW(int I, int J, int nu, int mu) const {
        return signed_pair(I, J, [&](int p) { return lambda_w(p, nu, mu); });
    }

    /// Vielbein density E^{[mu nu]}_{IJ} = e e^{[mu}_I e^{nu]}_J as a Poly in e.
    const Poly& density(int I, int J, int mu, int nu) const {
        return density_[((I * n_ + J) * n_ + mu) * n_ + nu];
    }

    /// d e^I_mu, d omega^{IJ}_mu (signed), d kappa, d p^e, d p^omega (signed), d x^mu.
    Form dX(int mu) const { return Form::basis({x(mu)}); }
    Form dE(int I, int mu) const { return Form::basis({e(I, mu)}); }
    Form dW(int I, int J, int mu) const;
    Form dK() const { return Form::basis({kappa_}); }
    Form dPE(int I, int mu, int nu) const { return Form::basis({pe(I, mu, nu)}); }
    Form dPW(int I, int J, int mu, int nu) const;

    /// Unit basis vectors.
    MultiVector Dx(int mu) const { return MultiVector::basis({x(mu)}); }
    MultiVector De(int I, int mu) const { return MultiVector::basis({e(I, mu)}); }
    /// ∂/∂omega^{IJ}_mu on the stored coordinate, signed by the pair orientation.
    MultiVector Dw(int I, int J, int mu) const;
    MultiVector Dk() const { return MultiVector::basis({kappa_}); }
    MultiVector Dpe(int I, int mu, int nu) const { return MultiVector::basis({pe(I, mu, nu)}); }
    MultiVector Dpw(int I, int J, int mu, int nu) const;

    /// epsilon symbol of the model dimension (upper and lower indices share values).
    int eps(const IndexTuple& t) const { return levi_civita(t, n_); }

private:
    template <class F>
    Poly signed_pair(int I, int J, F&& f) const {
        if (I == J) return Poly();
        Poly p = var(f(stored(I, J)));
        return I < J ? p : -p;
    }

    int n_ = 0;
    Chart chart_;
    InternalMetric h_;
    VolumeForms vol_;
    std::vector<int> pair_index_, pair_I_, pair_J_;
    std::vector<VarId> x_, e_, w_, pe_, pw_, te_, tw_, ups_, ve_, vw_, le_, lw_;
    VarId kappa_ = 0;
    std::vector<Poly> density_;
};

using ModelPtr = std::shared_ptr<const Model>;

}  // namespace dwv
