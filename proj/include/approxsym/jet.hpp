#ifndef APPROXSYM_JET_HPP
#define APPROXSYM_JET_HPP

#include <map>

#include "approxsym/vector_field.hpp"

namespace approxsym {

enum class Direction { X, T };

// Prolongation of a point field to jet space: coeffs[(nx,nt)] is the
// coefficient of d/du_J for the multi-index x^nx t^nt, 1 <= nx+nt <= order.
struct ProlongedField {
    VectorField base;
    int order = 0;
    std::map<std::pair<int, int>, Expr> coeffs;
};

// Highest jet order appearing anywhere in e (0 if none).
int jet_order_of(const Expr& e);

// D_x e or D_t e on jet space. Throws Error("jet overflow") if the result
// would need a jet coordinate of order above max_order.
Expr total_derivative(const Expr& e, Direction dir, int max_order);

// Characteristic-form prolongation:
//   phi^J = D_J(phi - xi u_x - tau u_t) + xi u_{Jx} + tau u_{Jt}.
ProlongedField prolong(const VectorField& X, int k);

// xi dF/dx + tau dF/dt + phi dF/du + sum_J phi^J dF/du_J
Expr apply_prolonged(const ProlongedField& PX, const Expr& F);

} // namespace approxsym

#endif
