#ifndef APPROXSYM_DETSOLVE_HPP
#define APPROXSYM_DETSOLVE_HPP

#include <string>
#include <vector>

#include "approxsym/jet.hpp"
#include "approxsym/ratmat.hpp"

namespace approxsym {

// Equation F0 + eps*F1 ~ 0 with F0 solvable for u_t (evolution form).
struct PerturbedPDE {
    Expr f0, f1;
    int jet_order = 0;
};

// Throws unless f0 and f1 are eps-free.
PerturbedPDE make_pde(const Expr& f0, const Expr& f1);

// Polynomial ansatz bounds: xi, tau of joint degree <= xi_deg/tau_deg in
// (x,t) and degree 0 in u; phi = (poly of degree <= phi_u_deg)*u + poly of
// degree <= phi_c_deg.
struct Ansatz {
    int xi_deg = 3;
    int tau_deg = 3;
    int phi_u_deg = 2;
    int phi_c_deg = 2;
};

Ansatz ansatz_from_degree(int n);

struct TaggedField {
    VectorField field;
    int eps_order = 0; // 0 = exact-rooted, 1 = eps-multiple
};

struct GeneratorBasis {
    std::vector<TaggedField> fields;
    size_t dimension() const { return fields.size(); }
};

// Determining system: one row per jet-coordinate monomial of the expanded
// residual, columns indexed by ansatz coefficients.
struct LinearSystem {
    std::vector<std::string> unknowns;
    std::vector<Monomial> row_keys; // provenance
    RatMat matrix;
    std::vector<Rat> rhs; // row sums of unknown-free terms
    std::string dump() const;
};

// u_t solved from F0 = 0; throws Error("not an evolution equation").
Expr evolution_rhs(const PerturbedPDE& pde);
// u_t on the perturbed manifold, exact to first order in eps.
Expr perturbed_rhs(const PerturbedPDE& pde);
// Eliminates every jet coordinate carrying a t-derivative using the given
// u_t value (and its total derivatives).
Expr on_shell(const Expr& e, const Expr& ut_value);

// X^(k) F0 restricted to the unperturbed manifold; X must be eps-free.
Expr exact_residual(const VectorField& X, const PerturbedPDE& pde);

// Full first-order residual of X on F0 + eps*F1, restricted to the
// perturbed manifold and truncated at eps^2.
EpsTruncated approximate_residual(const VectorField& X, const PerturbedPDE& pde);

GeneratorBasis solve_exact(const PerturbedPDE& pde, const Ansatz& a);
LinearSystem exact_system(const PerturbedPDE& pde, const Ansatz& a);

// Order-eps defect of an exact symmetry on the perturbed equation.
Expr auxiliary_H(const VectorField& X0, const PerturbedPDE& pde);

struct DeformationSolution {
    VectorField particular;               // one eps-free X1
    std::vector<VectorField> homogeneous; // nullspace = exact-symmetry space
};

// Solves X1^(k) F0 |_{F0=0} + H(X0) = 0; throws Error("unstable symmetry")
// when inconsistent.
DeformationSolution solve_deformation(const VectorField& X0, const PerturbedPDE& pde,
                                      const Ansatz& a);

// The subspace of exact symmetries that admit first-order deformations.
// Consistency of the deformation system is linear in X0, so this is an exact
// nullspace computation; equals the whole exact algebra iff every symmetry
// is stable.
std::vector<VectorField> stable_subspace(const PerturbedPDE& pde, const Ansatz& a);

// Basis {X_i + eps*X1_i : X_i spanning the stable subspace} u {eps*X_j : X_j
// exact}; every element's truncated residual is verified to be (0,0) before
// returning. When all exact symmetries are stable this is the inherited
// algebra {X_i, eps*X_i} with deformations absorbed.
GeneratorBasis approximate_symmetries(const PerturbedPDE& pde, const Ansatz& a);

// --- span utilities over polynomial-coefficient fields -----------------------

// Columns are the fields' coordinates over a shared monomial index.
RatMat field_matrix(const std::vector<VectorField>& fields);
bool in_span(const std::vector<VectorField>& basis, const VectorField& w);
bool same_span(const std::vector<VectorField>& a, const std::vector<VectorField>& b);
std::optional<std::vector<Rat>> coordinates_in(const std::vector<VectorField>& basis,
                                               const VectorField& w);

} // namespace approxsym

#endif
