#include "check_lookup.hpp"
#include "dwv/palatini.hpp"

#include <doctest.h>

using namespace dwv;

namespace {

const PalatiniContext& ctx(int n) {
    static PalatiniContext c3(Model::build(3)), c4(Model::build(4));
    return n == 3 ? c3 : c4;
}

std::string tag(int n) { return n == 3 ? "n3." : "n4."; }

}  // namespace

TEST_CASE("chart layout") {
    const Model& m = ctx(4).model();
    CHECK(m.pairs() == 6);
    // x, e, omega, kappa, p^e, p^omega.
    CHECK(m.chart().coordinate_count() == static_cast<std::size_t>(4 + 16 + 24 + 1 + 64 + 96));
    CHECK(m.W(1, 0, 2) == -m.W(0, 1, 2));
    CHECK(m.W(2, 2, 0).is_zero());
    // Lowering the internal index 0 picks up h_00 = -1.
    CHECK(m.Wmix(1, 2, 0) == -m.W(1, 0, 2));
}

TEST_CASE("canonical forms") {
    for (int n : {3, 4}) {
        const auto all = canonical_checks(ctx(n));
        expect_no_failures(all);
        CHECK(exterior_derivative(ctx(n).model().chart(), ctx(n).theta_dw()) == ctx(n).omega_dw());
        CHECK(exterior_derivative(ctx(n).model().chart(), ctx(n).omega_dw()).is_zero());
        CHECK(ctx(n).omega_dw().degree() == n + 1);
    }
}

TEST_CASE("Lagrangian, Legendre map and Hamiltonian") {
    for (int n : {3, 4}) {
        expect_no_failures(lagrangian_checks(ctx(n), 42, 5));
        expect_no_failures(legendre_checks(ctx(n)));
        expect_no_failures(hamiltonian_checks(ctx(n)));
        expect_no_failures(extended_hamiltonian_checks(ctx(n)));
        expect_no_failures(geometry_checks(ctx(n), 42, 5));
    }
}

TEST_CASE("Hamiltonian differential: helper identities and sign-corrected display") {
    const auto d3 = dH_checks(ctx(3));
    expect_zero_residuals(d3, {"dH.n3.helper_ab", "dH.n3.helper_bc", "dH.n3.display_negated_field_terms"});
    CHECK(find_check(d3, "dH.n3.display").residual_terms > 0);
    const auto d4 = dH_checks(ctx(4));
    expect_zero_residuals(d4, {"dH.n4.expanded", "dH.n4.helper", "dH.n4.chain_ab", "dH.n4.chain_bc",
                               "dH.n4.chain_cd", "dH.n4.chain_de", "dH.n4.display_negated_connection_term"});
}

TEST_CASE("Hamilton system blocks") {
    const auto h3 = hamilton_equation_checks(ctx(3));
    expect_zero_residuals(h3, {"hamilton.n3.kappa_block", "hamilton.n3.frame_block_negated_connection",
                               "hamilton.n3.connection_block_negated_connection", "hamilton.n3.upsilon_block_half"});
    const auto h4 = hamilton_equation_checks(ctx(4));
    expect_zero_residuals(h4, {"hamilton.n4.kappa_block", "hamilton.n4.frame_block_unreduced",
                               "hamilton.n4.connection_block_negated_connection", "hamilton.n4.upsilon_block_positive"});
}

TEST_CASE("plain Legendre Hamiltonian reproduces the Euler-Lagrange equations") {
    for (int n : {3, 4}) {
        const auto all = einstein_checks(ctx(n));
        expect_zero_residuals(all, {"einstein." + tag(n) + "curvature_covariant",
                                    "einstein." + tag(n) + "euler_lagrange_plain_legendre"});
    }
}

TEST_CASE("pre-multisymplectic systems") {
    const auto p3 = premultisymplectic_checks(ctx(3));
    expect_zero_residuals(p3, {"premulti.n3.theta_display", "premulti.n3.theta_split", "premulti.n3.theta1_lemma",
                               "premulti.n3.theta2_lemma", "premulti.n3.dtheta1_alternative", "premulti.n3.frame_block",
                               "premulti.n3.connection_block", "premulti.n3.upsilon_block",
                               "premulti.n3.upsilon_automatic", "premulti.n3.base_block_dependent"});
    const auto p4 = premultisymplectic_checks(ctx(4));
    expect_zero_residuals(p4, {"premulti.n4.theta_coordinates", "premulti.n4.frame_block",
                               "premulti.n4.connection_block", "premulti.n4.upsilon_block_positive_quadratic",
                               "premulti.n4.base_block_dependent"});
}

TEST_CASE("spin connection compatibility at rational jets") {
    for (int n : {3, 4})
        for (std::uint64_t s = 0; s < 5; ++s) {
            const FrameSample fs = random_frame_sample(n, s);
            for (const Rational& r : compatibility_residual(fs, InternalMetric::lorentzian(n))) CHECK(r.is_zero());
        }
}
