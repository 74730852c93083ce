#ifndef APPROXSYM_INVARIANTS_HPP
#define APPROXSYM_INVARIANTS_HPP

#include <optional>

#include "approxsym/vector_field.hpp"

namespace approxsym {

// Pair of functionally independent invariants: the first free of u, the
// second generally carrying it.
struct InvariantPair {
    Expr first, second;
};

// X(I) = xi dI/dx + tau dI/dt + phi dI/du normalizes to zero. eps is an
// ordinary formal parameter here: no truncation.
bool verify_invariant(const VectorField& X, const Expr& I);

// Relaxed variant: annihilation modulo eps^2 when the residual is
// polynomial in eps, exact annihilation otherwise.
bool verify_invariant_relaxed(const VectorField& X, const Expr& I);

// Solves the characteristic system dx/xi = dt/tau = du/phi for the
// recognized class: tau constant, xi a polynomial of degree <= 2 in x, and
// phi = (alpha + beta x) u with beta = 0 unless xi is quadratic. Throws
// Error("characteristic system not in catalog") outside the class. Every
// returned pair has passed verify_invariant.
InvariantPair characteristic_invariants(const VectorField& X);

// Jacobian of the pair w.r.t. (x,t,u) has rank 2 at `points` random rational
// points (singular loci are resampled away).
bool functionally_independent(const InvariantPair& pair, unsigned seed = 0, int points = 5);

struct InvariantRow {
    std::string label;
    VectorField generator;
    Expr printed_first, printed_second;
    bool printed_first_ok = false;
    bool printed_second_ok = false;
    bool catalog_applicable = false;
    std::optional<InvariantPair> derived;
    bool derived_ok = false; // verified and independent
};

// The published fourteen-row table: every printed fixture is verified, and
// the catalog solver is run wherever the generator falls in its class.
std::vector<InvariantRow> published_invariant_table();

std::string text_invariant_table(const std::vector<InvariantRow>& rows);
std::string latex_invariant_table(const std::vector<InvariantRow>& rows);

} // namespace approxsym

#endif
