#pragma once

#include "dwv/poly.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dwv {

using IndexTuple = std::vector<int>;
using RMatrix = std::vector<std::vector<Rational>>;
using PMatrix = std::vector<std::vector<Poly>>;

/// Diagonal internal metric; Lorentzian (-1, +1, ..., +1) by default.
struct InternalMetric {
    std::vector<int> signs;
    static InternalMetric lorentzian(int n);
    int operator()(int i) const { return signs.at(static_cast<std::size_t>(i)); }
    int dim() const { return static_cast<int>(signs.size()); }
    /// (-1)^sigma with sigma the number of negative entries.
    int signature_sign() const;
};

/// Permutation sign of t as a tuple of length n over [0, n), 0 on repeats.
int levi_civita(const IndexTuple& t, int n);
/// Sign of the permutation taking lower to upper, 0 if they are not permutations of each other.
int generalized_kronecker(const IndexTuple& upper, const IndexTuple& lower);

/// Calls f for every tuple of length len over [0, n), in lexicographic order.
void for_each_tuple(int len, int n, const std::function<void(const IndexTuple&)>& f);
/// Calls f with every permutation of [0, n) and its sign, in lexicographic order.
void for_each_permutation(int n, const std::function<void(const IndexTuple&, int)>& f);

struct IdentityReport {
    std::string name;
    std::size_t evaluated = 0;
    std::size_t mismatches = 0;
    bool pass() const { return mismatches == 0; }
};

std::vector<IdentityReport> epsilon_identity_suite(int n);

enum class DeterminantMode { EpsilonFormula, Cofactor };
/// Determinant of a matrix indexed [I][mu].
Poly vielbein_determinant(const PMatrix& e, DeterminantMode mode);
Rational determinant(const RMatrix& m);
/// Exact inverse; throws std::domain_error on a singular matrix.
RMatrix inverse(const RMatrix& m);

/// E^{[mu nu]}_{IJ} = (1/(2!(n-2)!)) eps_{IJ K..} eps^{mu nu rho..} e^K_rho ... as Polys in e[I][mu].
/// Indexed by ((I*n + J)*n + mu)*n + nu.
std::vector<Poly> density_pair(const PMatrix& e);
/// E^mu_I = (1/(n-1)!) eps^{mu ..} eps_{I ..} e...e at a rational point, indexed [mu][I].
RMatrix density_single(const RMatrix& e);

std::vector<IdentityReport> frame_epsilon_relations(const RMatrix& e, const InternalMetric& h);

/// |det e| R^{[rho sigma]}_{rho sigma} minus the epsilon-contracted frame form, with R random
/// rationals antisymmetric in both index pairs. Works for n = 3 and n = 4.
Rational eh_palatini_reduction_check(const RMatrix& e, const InternalMetric& h, std::uint64_t seed);

/// Seeded integer matrix with entries in [-3, 3] and positive determinant.
RMatrix random_vielbein(int n, std::uint64_t seed);

}  // namespace dwv
