#pragma once

#include "dwv/check.hpp"
#include "dwv/extcalc.hpp"

#include <cstdint>
#include <vector>

namespace dwv {

/// Seeded random element of degree k on the chart's coordinates: `terms` random blades, each
/// with a random polynomial coefficient of degree <= max_degree.
Form random_form(const Chart& chart, int k, std::uint64_t seed, int terms = 3, int max_degree = 2);
MultiVector random_multivector(const Chart& chart, int k, std::uint64_t seed, int terms = 3, int max_degree = 2);

/// Graded-algebra laws of the engine on a five-coordinate chart, each over `cases` seeded
/// instances: d∘d = 0, wedge graded commutativity and associativity, the interior-product
/// derivation law, pullback commuting with d, the Lie-derivative derivation law,
/// Schouten–Nijenhuis reduction, graded antisymmetry, graded Leibniz and graded Jacobi, and
/// the commutator expansion of d((v1 ∧ v2 ∧ v3) ⌟ ω) for arbitrary fields and closed ω.
std::vector<CheckOutcome> engine_property_checks(std::uint64_t seed, int cases);

}  // namespace dwv
