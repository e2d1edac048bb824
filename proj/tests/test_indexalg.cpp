#include "dwv/indexalg.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace dwv;

namespace {

/// Leibniz formula over explicit permutations, independent of the library's enumerators.
Rational naive_det(const RMatrix& a) {
    const int n = static_cast<int>(a.size());
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    Rational total;
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p[i] > p[j]) ++inv;
        Rational prod(inv % 2 ? -1 : 1);
        for (int i = 0; i < n; ++i) prod *= a[i][p[i]];
        total += prod;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

}  // namespace

TEST_CASE("Levi-Civita symbol") {
    CHECK(levi_civita({0, 1, 2}, 3) == 1);
    CHECK(levi_civita({1, 0, 2}, 3) == -1);
    CHECK(levi_civita({0, 0, 2}, 3) == 0);
    CHECK(levi_civita({3, 2, 1, 0}, 4) == 1);
}

TEST_CASE("generalized Kronecker delta") {
    CHECK(generalized_kronecker({0, 1}, {0, 1}) == 1);
    CHECK(generalized_kronecker({0, 1}, {1, 0}) == -1);
    CHECK(generalized_kronecker({0, 1}, {0, 2}) == 0);
    for (int n : {3, 4}) {
        long sum = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) sum += generalized_kronecker({a, b}, {a, b});
        CHECK(sum == n * (n - 1));
    }
}

TEST_CASE("Lorentzian metric") {
    const InternalMetric h = InternalMetric::lorentzian(4);
    CHECK(h(0) == -1);
    CHECK(h(3) == 1);
    CHECK(h.signature_sign() == -1);
}

TEST_CASE("every epsilon identity holds exhaustively") {
    for (int n : {3, 4}) {
        for (const IdentityReport& r : epsilon_identity_suite(n)) {
            INFO(n, " ", r.name);
            CHECK(r.evaluated > 0);
            CHECK(r.mismatches == 0);
        }
    }
    CHECK_THROWS_AS(epsilon_identity_suite(5), std::invalid_argument);
}

TEST_CASE("determinants agree with the Leibniz formula") {
    for (int n : {3, 4})
        for (std::uint64_t s = 0; s < 10; ++s) {
            const RMatrix e = random_vielbein(n, s);
            CHECK(determinant(e) == naive_det(e));
            CHECK(determinant(e).sign() > 0);
            PMatrix pe(e.size(), std::vector<Poly>(e.size()));
            for (std::size_t i = 0; i < e.size(); ++i)
                for (std::size_t j = 0; j < e.size(); ++j) pe[i][j] = Poly(e[i][j]);
            CHECK(vielbein_determinant(pe, DeterminantMode::EpsilonFormula) == Poly(naive_det(e)));
            CHECK(vielbein_determinant(pe, DeterminantMode::Cofactor) == Poly(naive_det(e)));
        }
}

TEST_CASE("identity vielbein has unit determinant") {
    PMatrix id(4, std::vector<Poly>(4));
    for (int i = 0; i < 4; ++i) id[i][i] = Poly(1);
    CHECK(vielbein_determinant(id, DeterminantMode::EpsilonFormula) == Poly(1));
}

TEST_CASE("exact inverse") {
    const RMatrix e = random_vielbein(4, 3);
    const RMatrix ei = inverse(e);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rational s;
            for (int k = 0; k < 4; ++k) s += e[i][k] * ei[k][j];
            CHECK(s == Rational(i == j ? 1 : 0));
        }
    CHECK_THROWS_AS(inverse(RMatrix(3, std::vector<Rational>(3))), std::domain_error);
}

TEST_CASE("pair density is antisymmetric in both index pairs") {
    const int n = 4;
    PMatrix e(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i)
        for (int m = 0; m < n; ++m) e[i][m] = Poly::variable(static_cast<VarId>(i * n + m));
    const std::vector<Poly> E = density_pair(e);
    auto at = [&](int I, int J, int mu, int nu) { return E[static_cast<std::size_t>(((I * n + J) * n + mu) * n + nu)]; };
    for (int I = 0; I < n; ++I)
        for (int J = 0; J < n; ++J)
            for (int mu = 0; mu < n; ++mu)
                for (int nu = 0; nu < n; ++nu) {
                    CHECK(at(I, J, mu, nu) == -at(J, I, mu, nu));
                    CHECK(at(I, J, mu, nu) == -at(I, J, nu, mu));
                }
    CHECK(at(0, 1, 0, 1).total_degree() == 2);
}

TEST_CASE("Einstein-Hilbert reduction vanishes at seeded rational points") {
    for (int n : {3, 4})
        for (std::uint64_t s = 0; s < 5; ++s)
            CHECK(eh_palatini_reduction_check(random_vielbein(n, s), InternalMetric::lorentzian(n), s).is_zero());
}

TEST_CASE("frame relations at seeded points") {
    for (int n : {3, 4})
        for (std::uint64_t s = 0; s < 3; ++s)
            for (const IdentityReport& r : frame_epsilon_relations(random_vielbein(n, 50 + s), InternalMetric::lorentzian(n))) {
                INFO(n, " ", r.name);
                CHECK(r.mismatches == 0);
            }
}
