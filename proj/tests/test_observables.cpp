#include "check_lookup.hpp"
#include "dwv/observables.hpp"

#include <doctest.h>

using namespace dwv;

namespace {

const PalatiniContext& ctx3() {
    static PalatiniContext c(Model::build(3));
    return c;
}

HamiltonianPair pair_of(ObservableKind k, std::uint64_t seed) {
    return make_pair(ctx3(), random_observable(ctx3().model(), k, seed));
}

}  // namespace

TEST_CASE("displayed Hamiltonian vector fields solve the defining equation") {
    const Chart& ch = ctx3().model().chart();
    for (ObservableKind k : {ObservableKind::Qe, ObservableKind::Qw, ObservableKind::Pe, ObservableKind::Pw,
                             ObservableKind::PkappaComplete, ObservableKind::Ce, ObservableKind::Cw})
        for (std::uint64_t s = 1; s <= 3; ++s) {
            INFO(to_string(k) << " seed " << s);
            CHECK(verify_pair(ch, pair_of(k, s), ctx3().omega_dw()).is_zero());
        }
}

TEST_CASE("the three bracket expressions agree and are antisymmetric") {
    const Chart& ch = ctx3().model().chart();
    const Form& w = ctx3().omega_dw();
    const HamiltonianPair a = pair_of(ObservableKind::Qe, 4), b = pair_of(ObservableKind::Pe, 5),
                         c = pair_of(ObservableKind::Pw, 6);
    for (const auto& [x, y] : {std::pair{a, b}, std::pair{b, c}, std::pair{a, c}}) {
        const Form br = bracket(x, y, w);
        CHECK(br == bracket_via_first(ch, x, y));
        CHECK(br == bracket_via_second(ch, x, y));
        CHECK(br == -bracket(y, x, w));
    }
}

TEST_CASE("observables of the same type Poisson-commute") {
    const Form& w = ctx3().omega_dw();
    CHECK(bracket(pair_of(ObservableKind::Qe, 7), pair_of(ObservableKind::Qw, 8), w).is_zero());
    CHECK(bracket(pair_of(ObservableKind::Pe, 9), pair_of(ObservableKind::Pw, 10), w).is_zero());
}

TEST_CASE("Jacobi defect is exact: cyclic sum equals dS") {
    const Chart& ch = ctx3().model().chart();
    const HamiltonianPair a = pair_of(ObservableKind::PkappaComplete, 11), b = pair_of(ObservableKind::Qw, 12),
                         c = pair_of(ObservableKind::Pw, 13);
    const HomotopyReport h = homotopy(ch, a, b, c, ctx3().omega_dw());
    CHECK(h.defect.is_zero());
    CHECK_FALSE(h.S.is_zero());
}

TEST_CASE("commutator expansion of d((v1 ∧ v2 ∧ v3) ⌟ omega) for Hamiltonian fields") {
    const Chart& ch = ctx3().model().chart();
    const Form& w = ctx3().omega_dw();
    const std::vector<MultiVector> f{pair_of(ObservableKind::Qe, 14).field, pair_of(ObservableKind::Pe, 15).field,
                                     pair_of(ObservableKind::PkappaComplete, 16).field};
    CHECK(exterior_derivative(ch, interior_sequence(f, w)) == rogers_expansion(ch, f, w));
}

TEST_CASE("the symplectomorphism family preserves omega") {
    const Model& m = ctx3().model();
    for (std::uint64_t s = 0; s < 3; ++s) {
        const SymplectomorphismData d = random_symplectomorphism(m, s);
        CHECK(symplectomorphism_condition_terms(m, d) == 0);
        const Form flux = interior_product(symplectomorphism_field(ctx3(), d), ctx3().omega_dw());
        CHECK(exterior_derivative(m.chart(), flux).is_zero());
    }
}

TEST_CASE("varpi decomposition closes on antisymmetric momenta") {
    const Model& m = ctx3().model();
    CHECK(exterior_derivative(m.chart(), varpi_decomposition(m)).is_zero());
    CHECK(varpi_e(m, 0).degree() == 1);
    CHECK(varpi_w(m, 0, 1) == -varpi_w(m, 1, 0));
}

TEST_CASE("constraint and projection groups: engine identities and corrected displays") {
    const auto c = constraint_checks(ctx3(), 42, 1);
    expect_zero_residuals(c, {"constraints.n3.pairs", "constraints.n3.pullback_zero", "constraints.n3.bracket_ee_zero",
                              "constraints.n3.bracket_ww_zero", "constraints.n3.bracket_ew_positive",
                              "constraints.n3.cyclic_ee_w_sum", "constraints.n3.cyclic_e_ww_zero",
                              "constraints.n3.homotopy"});
    const auto p = pi_checks(ctx3(), 42, 1);
    expect_zero_residuals(p, {"pi.n3.decomposition_antisymmetric_momenta",
                              "pi.n3.frame_term_expansion_antisymmetric_momenta", "pi.n3.varpi_e_pullback"});
}

TEST_CASE("negative controls are detected") {
    const auto o = observable_checks(ctx3(), 42, 1);
    expect_zero_residuals(o, {"observables.n3.corrupted_sign_detected", "observables.n3.non_hamiltonian_detected",
                              "observables.n3.dw_pair.Pkappa_with_frame_momenta", "observables.n3.e_recovery"});
    CHECK(find_check(o, "observables.n3.dw_pair.Pkappa").residual_terms > 0);
}
