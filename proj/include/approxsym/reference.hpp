#ifndef APPROXSYM_REFERENCE_HPP
#define APPROXSYM_REFERENCE_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "approxsym/ratmat.hpp"

namespace approxsym::reference {

// Tables as printed in the published account of the perturbed Harry Dym
// symmetry analysis. The derived results disagree with a handful of entries;
// the reports compare against these fixtures and list every difference.

using SparseVec = std::vector<std::pair<int, Rat>>;

// printed commutator table: entry (i,j) = printed [v_{i+1}, v_{j+1}]
const std::array<std::array<SparseVec, 10>, 10>& published_commutators();

// printed adjoint table: Ad(exp(mu v_{i+1})) v_{j+1} as a sum of
// e^(lambda mu) p(mu) v_{k+1} terms; one entry is typographically garbled
// and carries only its printed text
struct PubAdjTerm {
    int k;
    Rat lambda;
    std::vector<Rat> poly; // coefficients in mu
};
struct PubAdjEntry {
    std::string printed;
    bool malformed = false;
    std::vector<PubAdjTerm> terms;
};
const std::array<std::array<PubAdjEntry, 10>, 10>& published_adjoint();

// printed one-dimensional optimal system: coordinates hold either rational
// literals or parameter letters
struct PubFamily {
    std::string label;
    std::map<int, std::string> coords;
};
const std::vector<PubFamily>& published_optimal_system();

// printed invariant table: generator in basis coordinates plus the printed
// pair of invariants (grammar text)
struct PubInvariantRow {
    std::string op_label;
    std::map<int, std::string> coords;
    std::string inv1;
    std::string inv2;
};
const std::vector<PubInvariantRow>& published_invariant_rows();

// printed semisimple-part identification {v1,v3,v5} -> {w1,-w2,-w3}
RatMat published_semisimple_map();

// printed generic exact generator and deformation (display text)
const char* published_exact_family();
const char* published_deformation_family();
// printed fifth exact generator (the derived one differs)
const char* published_quadratic_generator();

} // namespace approxsym::reference

namespace approxsym {
struct LieAlgebraTable;
}

namespace approxsym::reference {

struct TableDiff {
    size_t i, j;
    std::string published;
    std::string derived;
};

// Entry-by-entry comparison of the derived tables against the printed ones.
std::vector<TableDiff> commutator_diffs(const LieAlgebraTable& derived);
std::vector<TableDiff> adjoint_diffs(const LieAlgebraTable& derived);

} // namespace approxsym::reference

#endif
