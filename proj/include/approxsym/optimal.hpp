#ifndef APPROXSYM_OPTIMAL_HPP
#define APPROXSYM_OPTIMAL_HPP

#include "approxsym/adjoint.hpp"

namespace approxsym {

// One invertible move of the reduction: an adjoint map with rational
// parameter, a one-parameter scaling subgroup element (v3/v4) recorded by its
// primitive eigenvalue factor, or a global rescaling of the vector.
struct TraceStep {
    enum class Kind { Adjoint, Scale, GlobalScale };
    Kind kind = Kind::Adjoint;
    size_t generator = 0; // Adjoint/Scale
    Rat param;            // mu | primitive factor (> 0) | global factor (!= 0)
};

struct ReductionTrace {
    std::vector<TraceStep> steps;
};

struct Representative {
    std::string family;
    std::map<std::string, Rat> parameters; // residual free parameters
    std::vector<Rat> coords;
};

struct AuditRow {
    std::string label;          // published family label
    std::string family_reached; // ladder family of a random instance
    bool fixed_point = false;
    std::vector<Rat> instance;
};

struct AuditReport {
    std::vector<AuditRow> rows;
    std::vector<std::pair<std::string, std::string>> duplicates; // identical printed templates
    std::vector<std::string> notes; // ladder-vs-printed differences
};

// Deterministic normalizer for the ten-dimensional approximate symmetry
// algebra: fixed pivot order (a10, a9, a4, a3, a5, a1, a2, a6, a7, a8), pivot
// scaled to 1, removable coefficients killed by the named adjoint maps, and
// the v2/v6/v7 coefficients sign-normalized through the v4/v3 scalings.
class OptimalSystem {
  public:
    explicit OptimalSystem(const LieAlgebraTable& g);

    const LieAlgebraTable& algebra() const { return g_; }
    const AdjointMatrix& adjoint(size_t i) const { return adj_[i]; }

    std::pair<Representative, ReductionTrace> normalize_vector(const std::vector<Rat>& w) const;
    std::string classify(const std::vector<Rat>& w) const;
    std::vector<Rat> replay(const ReductionTrace& trace, std::vector<Rat> w) const;

    // replayable script for the CLI
    std::string trace_script(const ReductionTrace& trace) const;

    AuditReport audit_table(unsigned seed = 0) const;

  private:
    LieAlgebraTable g_;
    std::vector<AdjointMatrix> adj_;
};

} // namespace approxsym

#endif
