#pragma once

#include "dwv/form.hpp"

#include <unordered_map>
#include <vector>

namespace dwv {

Form wedge(const Form& a, const Form& b);
MultiVector wedge(const MultiVector& a, const MultiVector& b);

/// d(f dq^A) = sum over coordinates q^i of (df/dq^i) dq^i ^ dq^A. Formal variables are constants.
Form exterior_derivative(const Chart& chart, const Form& a);

/// Contraction with innermost-first nesting
/// (X1 ^ ... ^ Xk) ⌟ a = Xk ⌟ ... ⌟ X1 ⌟ a, applied per basis k-vector.
Form interior_product(const MultiVector& x, const Form& a);
/// Xk ⌟ ... ⌟ X1 ⌟ a for vector fields X1..Xk without expanding their wedge.
Form interior_sequence(const std::vector<MultiVector>& factors, const Form& a);

/// Directional derivative v(f) over coordinates.
Poly apply_vector(const MultiVector& v, const Poly& f);

MultiVector lie_bracket(const MultiVector& v, const MultiVector& w);
MultiVector schouten_nijenhuis(const MultiVector& u, const MultiVector& v);
Form lie_derivative(const Chart& chart, const MultiVector& v, const Form& a);

/// Pullback along q -> sigma(q); unmapped coordinates are kept.
Form pullback(const Chart& chart, const std::unordered_map<VarId, Poly>& sigma, const Form& a);

/// d(Ξ ⌟ ω); zero iff Ξ is locally Hamiltonian.
Form is_locally_hamiltonian(const Chart& chart, const MultiVector& xi, const Form& omega);

struct VolumeForms {
    Form beta;
    /// beta_mu[m] = ∂_m ⌟ beta.
    std::vector<Form> beta_mu;
    /// beta_munu[m][k] = ∂_m ⌟ ∂_k ⌟ beta.
    std::vector<std::vector<Form>> beta_munu;
};

VolumeForms volume_forms(const Chart& chart);
/// ∂_{m_1} ⌟ ... ⌟ ∂_{m_p} ⌟ beta for indices (m_1, ..., m_p); the last index contracts first.
Form beta_multi(const Chart& chart, const std::vector<int>& indices);

}  // namespace dwv
