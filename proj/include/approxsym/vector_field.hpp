#ifndef APPROXSYM_VECTOR_FIELD_HPP
#define APPROXSYM_VECTOR_FIELD_HPP

#include <string>

#include "approxsym/expr.hpp"

namespace approxsym {

// Point-symmetry generator xi*d/dx + tau*d/dt + phi*d/du. Coefficients may
// depend on x, t, u, eps (linearly) and parameters, never on jet coordinates.
struct VectorField {
    Expr xi, tau, phi;

    bool is_zero() const { return xi.is_zero() && tau.is_zero() && phi.is_zero(); }
    bool operator==(const VectorField& o) const {
        return xi == o.xi && tau == o.tau && phi == o.phi;
    }

    VectorField operator+(const VectorField& o) const {
        return {xi + o.xi, tau + o.tau, phi + o.phi};
    }
    VectorField operator-(const VectorField& o) const {
        return {xi - o.xi, tau - o.tau, phi - o.phi};
    }
    VectorField scale(const Expr& c) const { return {c * xi, c * tau, c * phi}; }

    // first-order action X(f) = xi f_x + tau f_t + phi f_u
    Expr apply(const Expr& f) const;

    // no jet coordinates in any coefficient
    bool is_point_field() const;
    // order-0 and order-1 parts of each coefficient (eps^2 = 0)
    std::pair<VectorField, VectorField> eps_split() const;
};

// [X,Y] with every coefficient eps-truncated (eps^2 = 0), per the first-order
// arithmetic of the approximate algebra.
VectorField commutator(const VectorField& X, const VectorField& Y);

// Same bracket without truncation; used where exact coefficients are wanted.
VectorField commutator_exact(const VectorField& X, const VectorField& Y);

std::string print(const VectorField& X);

} // namespace approxsym

#endif
