#pragma once

#include "dwv/palatini.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dwv {

enum class ObservableKind { Qe, Qw, Pe, Pw, Pkappa, PkappaComplete, Ce, Cw, PiI, PiIJ };
enum class Surface { FullDW, Constraint };

const char* to_string(ObservableKind k);

/// Coefficient functions and fixed indices of one observable.
///
/// coeff layout by kind: Qe chi^{mu nu}_I at (I n + mu) n + nu; Qw psi^{mu nu}_{IJ} at
/// (p n + mu) n + nu for the stored pair p (antisymmetric in IJ by extension); Pe zeta^I_mu at
/// I n + mu; Pw phi^{IJ}_mu at p n + mu; Pkappa and PkappaComplete X^alpha at alpha.
/// Ce uses (I, mu), Cw uses (I, J, mu), PiI uses I, PiIJ uses (I, J); these carry no coeff.
struct ObservableSpec {
    ObservableKind kind = ObservableKind::Qe;
    std::vector<Poly> coeff;
    int I = 0, J = 1, mu = 0;
};

/// Seeded coefficients of total degree <= degree in x. psi is antisymmetric in mu nu.
/// Fixed indices of Ce and Cw are drawn from the seed as well.
ObservableSpec random_observable(const Model& m, ObservableKind kind, std::uint64_t seed, int degree = 2);

/// The form on the full chart, or its pullback to the constraint surface.
Form make_observable(const PalatiniContext& ctx, const ObservableSpec& s, Surface surface = Surface::FullDW);

/// A form with its Hamiltonian vector field. The pair is valid iff field ⌟ ω + scale dφ = 0;
/// scale differs from 1 only where the field involves the inverse vielbein and is stored
/// multiplied by det e.
struct HamiltonianPair {
    std::string name;
    Form form;
    MultiVector field;
    Poly scale = Poly(1);
};

/// The displayed Hamiltonian vector field. On the constraint surface Qw is defined for n = 4
/// only and is returned scaled by det e. Throws std::invalid_argument for PiI, PiIJ, and for
/// Pkappa, PkappaComplete, Ce, Cw off the full chart.
HamiltonianPair make_pair(const PalatiniContext& ctx, const ObservableSpec& s, Surface surface = Surface::FullDW);

/// field ⌟ ω + scale dφ.
Form verify_pair(const Chart& chart, const HamiltonianPair& p, const Form& omega);

/// {φ, ρ} = (Ξφ ∧ Ξρ) ⌟ ω. Throws std::invalid_argument on a scaled pair.
Form bracket(const HamiltonianPair& a, const HamiltonianPair& b, const Form& omega);
/// Ξφ ⌟ dρ and -Ξρ ⌟ dφ, which agree with bracket() on Hamiltonian pairs.
Form bracket_via_first(const Chart& chart, const HamiltonianPair& a, const HamiltonianPair& b);
Form bracket_via_second(const Chart& chart, const HamiltonianPair& a, const HamiltonianPair& b);
/// {X, c} = -Ξc ⌟ dX for a bracket result X.
Form outer_bracket(const Chart& chart, const Form& x, const HamiltonianPair& c);

struct HomotopyReport {
    /// {{b, c}, a} + {{c, a}, b} + {{a, b}, c}.
    Form cyclic_sum;
    /// (Ξa ∧ Ξb ∧ Ξc) ⌟ ω.
    Form S;
    /// cyclic_sum - dS.
    Form defect;
};
HomotopyReport homotopy(const Chart& chart, const HamiltonianPair& a, const HamiltonianPair& b,
                        const HamiltonianPair& c, const Form& omega);

/// Cartan-calculus expansion of d((v1 ∧ ... ∧ vm) ⌟ ω) for arbitrary fields and ω, 1-based:
/// (-1)^m Σ_{i<j} (-1)^{i+j} ([vi, vj] ∧ rest) ⌟ ω + Σ_i (-1)^{i+m} rest_i ⌟ L_{vi} ω
/// + (-1)^m (v1 ∧ ... ∧ vm) ⌟ dω.
Form rogers_expansion(const Chart& chart, const std::vector<MultiVector>& fields, const Form& omega);
/// The same bracket sum with every sign equal to (-1)^m.
Form rogers_uniform_sign(const std::vector<MultiVector>& fields, const Form& omega);

/// varpi_I = (1/2) p^{e_mu nu}_I beta_{mu nu}; varpi_IJ = (1/2) p^{omega_mu nu}_{IJ} beta_{mu nu}.
Form varpi_e(const Model& m, int I);
Form varpi_w(const Model& m, int I, int J);
/// dkappa ^ beta + de^I ^ dvarpi_I + domega^{IJ} ^ dvarpi_IJ with e^I = e^I_mu dx^mu.
Form varpi_decomposition(const Model& m);

/// Seeded symplectomorphism generator: X, Theta^I_mu, Theta^{IJ}_mu, Upsilon^e, Upsilon^omega in x,
/// and Upsilon chosen so that dUpsilon/de - ∂_nu Upsilon^e = dUpsilon/domega - ∂_nu Upsilon^omega = 0.
struct SymplectomorphismData {
    std::vector<Poly> X, theta_e, theta_w, ups_e, ups_w;
    Poly ups;
};
SymplectomorphismData random_symplectomorphism(const Model& m, std::uint64_t seed, int degree = 1);
/// Ξ(Q) + Ξ(P) of the family.
MultiVector symplectomorphism_field(const PalatiniContext& ctx, const SymplectomorphismData& d);
/// Terms of the two integrability conditions on Upsilon.
std::size_t symplectomorphism_condition_terms(const Model& m, const SymplectomorphismData& d);

std::vector<CheckOutcome> observable_checks(const PalatiniContext& ctx, std::uint64_t seed, int trials);
std::vector<CheckOutcome> bracket_checks(const PalatiniContext& ctx, std::uint64_t seed, int trials);
std::vector<CheckOutcome> jacobi_checks(const PalatiniContext& ctx, std::uint64_t seed, int trials);
std::vector<CheckOutcome> constraint_checks(const PalatiniContext& ctx, std::uint64_t seed, int trials);
std::vector<CheckOutcome> pi_checks(const PalatiniContext& ctx, std::uint64_t seed, int trials);

}  // namespace dwv
