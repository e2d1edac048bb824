#pragma once

#include "dwv/check.hpp"
#include "dwv/model.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace dwv {

using Substitution = std::unordered_map<VarId, Poly>;

/// Lazily computed canonical objects of one model. Not thread-safe.
class PalatiniContext {
public:
    explicit PalatiniContext(ModelPtr m) : m_(std::move(m)) {}

    const Model& model() const { return *m_; }
    ModelPtr model_ptr() const { return m_; }

    /// kappa beta + p^e de ^ beta_nu + p^omega domega ^ beta_nu.
    const Form& theta_dw() const;
    /// d theta_dw.
    const Form& omega_dw() const;
    /// p^e -> 0, p^omega_{mu nu} -> -E^{[mu nu]}.
    const Substitution& constraint() const;
    /// The constraint map plus kappa -> E omega omega (the level set H = 0).
    const Substitution& level_set() const;
    const Form& theta_palatini() const;
    const Form& omega_palatini() const;
    /// kappa - E^{[mu nu]}_{IJ} omega^J_{mu K} omega^{KI}_nu.
    const Poly& hamiltonian() const;
    const Form& dH() const;
    /// Factors X_nu = ∂_nu + Theta^I_{nu mu} ∂_e + Theta^{IJ}_{nu mu} ∂_omega + Upsilon_nu ∂_kappa.
    const std::vector<MultiVector>& hamilton_multivector() const;
    /// X ⌟ omega_palatini - (-1)^n dH.
    const Form& hamilton_residual() const;
    /// Poincaré–Cartan form built from the action form (epsilon e ^ F, or (1/2) epsilon e ^ e ^ F).
    const Form& theta_premulti() const;
    const Form& omega_premulti() const;
    /// X ⌟ omega_premulti with X free of the ∂_kappa component.
    const Form& premulti_residual() const;

private:
    ModelPtr m_;
    mutable std::optional<Form> theta_dw_, omega_dw_, theta_pal_, omega_pal_, dH_, ham_res_, theta_pre_,
        omega_pre_, pre_res_;
    mutable std::optional<Substitution> constraint_, level_set_;
    mutable std::optional<Poly> H_;
    mutable std::optional<std::vector<MultiVector>> X_;
};

/// Lagrangian density E^{[mu nu]}_{IJ}(v^{IJ}_{mu nu} + omega^I_{mu K} omega^{KJ}_nu).
Poly lagrangian_density(const Model& m);

/// Theta := first-jet variables (Theta^I_{nu mu} = v^I_{nu mu}, Theta^{IJ}_{nu mu} = v^{IJ}_{nu mu}).
Substitution jet_substitution(const Model& m);
/// Theta := covariant components z^I_{ab} = v^I_{ab} + omega_a^I_J e^J_b and
/// z^{IJ}_{ab} = v^{IJ}_{ab} + omega_a^I_K omega_b^{KJ} - omega_a^J_K omega_b^{KI}.
Substitution covariant_substitution(const Model& m);

/// F^{IJ}_{mu nu} = v_{mu nu} - v_{nu mu} + omega^I_{mu K} omega^{KJ}_nu - omega^I_{nu K} omega^{KJ}_mu.
Poly curvature(const Model& m, int I, int J, int mu, int nu);
/// (d_omega e)^I_{mu nu} = v^I_{mu nu} - v^I_{nu mu} + omega^I_{mu J} e^J_nu - omega^I_{nu J} e^J_mu.
Poly torsion(const Model& m, int I, int mu, int nu);
/// (D omega)^{IJ}_{mu nu} in the component form 2∂_[mu omega_nu] + 2 omega_[mu^I_K omega_nu]^{KJ} - (I <-> J).
Poly covariant_connection(const Model& m, int I, int J, int mu, int nu);

/// Rational jet sample: e[I][mu], de[mu][I][rho] = ∂_mu e^I_rho, w[mu][I][J] = omega^{IJ}_mu.
struct FrameSample {
    RMatrix e;
    std::vector<RMatrix> de;
    std::vector<RMatrix> w;
};
FrameSample random_frame_sample(int n, std::uint64_t seed);
/// Gamma[nu][mu][rho] = e^nu_I ∂_mu e^I_rho + e^nu_I omega^I_{mu J} e^J_rho; throws on singular e.
std::vector<RMatrix> christoffel(const FrameSample& s, const InternalMetric& h);
/// ∂_mu e^I_nu + e^K_nu omega^I_{mu K} - Gamma^rho_{mu nu} e^I_rho, every entry.
std::vector<Rational> compatibility_residual(const FrameSample& s, const InternalMetric& h);
/// g = e^T h e.
RMatrix spacetime_metric(const RMatrix& e, const InternalMetric& h);

struct ExtendedHamiltonian {
    Poly H;
    /// Indexed like the model's momentum variables.
    std::vector<Poly> d_pe, d_pw, d_e, d_w;
};
/// H + lambda^I_{nu mu} p^{e_mu nu}_I + lambda^{IJ}_{nu mu}(p^{omega_mu nu}_{IJ} + E^{[mu nu]}_{IJ});
/// derivatives by stored coordinates.
ExtendedHamiltonian extended_hamiltonian(const PalatiniContext& ctx);

std::vector<CheckOutcome> canonical_checks(const PalatiniContext& ctx);
std::vector<CheckOutcome> lagrangian_checks(const PalatiniContext& ctx, std::uint64_t seed, int trials);
std::vector<CheckOutcome> legendre_checks(const PalatiniContext& ctx);
std::vector<CheckOutcome> hamiltonian_checks(const PalatiniContext& ctx);
std::vector<CheckOutcome> dH_checks(const PalatiniContext& ctx);
std::vector<CheckOutcome> hamilton_equation_checks(const PalatiniContext& ctx);
std::vector<CheckOutcome> einstein_checks(const PalatiniContext& ctx);
std::vector<CheckOutcome> premultisymplectic_checks(const PalatiniContext& ctx);
std::vector<CheckOutcome> geometry_checks(const PalatiniContext& ctx, std::uint64_t seed, int trials);
std::vector<CheckOutcome> extended_hamiltonian_checks(const PalatiniContext& ctx);

}  // namespace dwv
