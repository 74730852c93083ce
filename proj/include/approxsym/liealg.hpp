#ifndef APPROXSYM_LIEALG_HPP
#define APPROXSYM_LIEALG_HPP

#include <array>
#include <string>
#include <vector>

#include "approxsym/detsolve.hpp"
#include "approxsym/ratmat.hpp"

namespace approxsym {

// Finite-dimensional Lie algebra over the rationals given by structure
// constants: [v_i, v_j] = sum_k c[i][j][k] v_k. The basis fields are kept
// when the table was computed from vector fields; reference tables carry
// labels only.
struct LieAlgebraTable {
    std::vector<std::string> labels;
    std::vector<VectorField> basis; // may be empty
    std::vector<std::vector<std::vector<Rat>>> c;

    size_t dim() const { return c.size(); }
    std::vector<Rat> bracket(const std::vector<Rat>& a, const std::vector<Rat>& b) const;
    // exact antisymmetry and Jacobi assertions; throws on violation
    void validate() const;
    std::string to_json() const;
};

// Expands each pairwise commutator in the given basis by exact linear solve.
// Throws Error("not closed: ...") naming the offending pair.
LieAlgebraTable structure_constants(const std::vector<VectorField>& basis);

// Built-in three-dimensional reference algebras keyed by name
// ("A_{3,8}", "sl2", "heisenberg", "abelian3").
LieAlgebraTable reference_algebra(const std::string& name);

// Rational subspace stored in reduced row echelon form.
class Subspace {
  public:
    Subspace() = default;
    static Subspace span(std::vector<std::vector<Rat>> vectors, size_t ambient);
    static Subspace zero(size_t ambient) { return span({}, ambient); }
    static Subspace full(size_t ambient);

    size_t dim() const { return rows_.size(); }
    size_t ambient() const { return ambient_; }
    const std::vector<std::vector<Rat>>& rows() const { return rows_; }
    bool contains(const std::vector<Rat>& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && rows_ == o.rows_; }
    Subspace sum(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;

  private:
    size_t ambient_ = 0;
    std::vector<std::vector<Rat>> rows_;
};

// span{[a,b] : a in A, b in B}
Subspace bracket_span(const LieAlgebraTable& g, const Subspace& a, const Subspace& b);

// g = g^(0) >= g^(1) >= ... until stabilization (the last two entries are
// equal when the series becomes perfect, the last is {0} when solvable).
std::vector<Subspace> derived_series(const LieAlgebraTable& g);

RatMat killing_form(const LieAlgebraTable& g);

// Killing-orthogonal complement of [g,g] (the radical in characteristic 0);
// verified to be a solvable ideal before returning.
Subspace radical(const LieAlgebraTable& g);

struct LeviReport {
    bool subalgebra = false;
    bool killing_nondegenerate = false;
    bool trivial_intersection = false;
    bool complements_radical = false;
    bool all() const {
        return subalgebra && killing_nondegenerate && trivial_intersection && complements_radical;
    }
};
LeviReport levi_check(const LieAlgebraTable& g, const Subspace& s);

// Derived chain r >= [r,r] >= ... down to {0}; throws Error("not solvable")
// if the chain stabilizes above zero.
std::vector<Subspace> solvable_chain(const LieAlgebraTable& g, const Subspace& r);
std::vector<Subspace> solvable_chain(const LieAlgebraTable& r);

// map columns are images of src basis vectors in dst coordinates; true iff
// map is invertible and intertwines the brackets.
bool check_homomorphism(const RatMat& map, const LieAlgebraTable& src,
                        const LieAlgebraTable& dst);

// Exhaustive search for a bracket-preserving invertible diagonal rescaling
// src_i -> d_i * dst_i over small-height rationals.
std::optional<RatMat> diagonal_iso_search(const LieAlgebraTable& src, const LieAlgebraTable& dst);

} // namespace approxsym

#endif
