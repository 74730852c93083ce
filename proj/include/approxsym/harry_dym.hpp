#ifndef APPROXSYM_HARRY_DYM_HPP
#define APPROXSYM_HARRY_DYM_HPP

#include "approxsym/detsolve.hpp"

namespace approxsym {

// Preset equation u_t + 1/2 u^3 u_xxx + eps u_x = 0.
PerturbedPDE harry_dym();

// Residual-verified exact generators, in the conventional order:
//   v1 = d/dx, v2 = d/dt, v3 = x d/dx + u d/du,
//   v4 = 3t d/dt - u d/du, v5 = x^2 d/dx + 2xu d/du.
std::vector<VectorField> harry_dym_exact_basis();

// v1..v5 followed by their eps-multiples v6..v10: the basis used by the
// commutator, adjoint, optimal-system and invariant tables.
std::vector<VectorField> harry_dym_approximate_basis();

// Label "v1".."v10".
std::string basis_label(size_t index);

// Renders a rational coordinate vector in the v-basis, e.g. "v5 - 2*v3".
std::string print_in_basis(const std::vector<Rat>& coords);

} // namespace approxsym

#endif
