#include "approxsym/liealg.hpp"

#include "approxsym/parser.hpp"

namespace approxsym {

std::vector<Rat> LieAlgebraTable::bracket(const std::vector<Rat>& a,
                                          const std::vector<Rat>& b) const {
    const size_t n = dim();
    if (a.size() != n || b.size() != n) throw Error("coordinate dimension mismatch");
    std::vector<Rat> out(n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < n; ++j) {
            if (b[j] == 0) continue;
            Rat f = a[i] * b[j];
            for (size_t k = 0; k < n; ++k)
                if (c[i][j][k] != 0) out[k] += f * c[i][j][k];
        }
    }
    return out;
}

void LieAlgebraTable::validate() const {
    const size_t n = dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                if (c[i][j][k] != -c[j][i][k]) throw Error("structure constants not antisymmetric");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                for (size_t l = 0; l < n; ++l) {
                    Rat s(0);
                    for (size_t m = 0; m < n; ++m)
                        s += c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] +
                             c[k][i][m] * c[m][j][l];
                    if (s != 0) throw Error("Jacobi identity violated");
                }
}

std::string LieAlgebraTable::to_json() const {
    std::string out = "{\"basis\": [";
    for (size_t i = 0; i < dim(); ++i) {
        if (i) out += ", ";
        out += "\"";
        out += basis.empty() ? labels[i] : print(basis[i]);
        out += "\"";
    }
    out += "], \"c\": [";
    for (size_t i = 0; i < dim(); ++i) {
        if (i) out += ", ";
        out += "[";
        for (size_t j = 0; j < dim(); ++j) {
            if (j) out += ", ";
            out += "[";
            bool first = true;
            for (size_t k = 0; k < dim(); ++k) {
                if (c[i][j][k] == 0) continue;
                if (!first) out += ", ";
                out += "[" + std::to_string(k) + ", \"" + rat_str(c[i][j][k]) + "\"]";
                first = false;
            }
            out += "]";
        }
        out += "]";
    }
    out += "]}";
    return out;
}

LieAlgebraTable structure_constants(const std::vector<VectorField>& basis) {
    if (basis.empty()) throw Error("empty basis");
    const size_t n = basis.size();
    LieAlgebraTable t;
    t.basis = basis;
    for (size_t i = 0; i < n; ++i) t.labels.push_back("v" + std::to_string(i + 1));
    t.c.assign(n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, Rat(0))));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            VectorField br = commutator(basis[i], basis[j]);
            auto coords = coordinates_in(basis, br);
            if (!coords)
                throw Error("not closed: [" + t.labels[i] + ", " + t.labels[j] +
                            "] is outside the span of the basis");
            for (size_t k = 0; k < n; ++k) {
                t.c[i][j][k] = (*coords)[k];
                t.c[j][i][k] = -(*coords)[k];
            }
        }
    t.validate();
    return t;
}

LieAlgebraTable reference_algebra(const std::string& name) {
    auto make = [](std::vector<std::tuple<int, int, int, Rat>> brackets) {
        LieAlgebraTable t;
        t.labels = {"w1", "w2", "w3"};
        t.c.assign(3, std::vector<std::vector<Rat>>(3, std::vector<Rat>(3, Rat(0))));
        for (const auto& [i, j, k, q] : brackets) {
            t.c[i][j][k] = q;
            t.c[j][i][k] = -q;
        }
        t.validate();
        return t;
    };
    if (name == "A_{3,8}")
        // the split simple three-dimensional algebra
        return make({{0, 1, 0, Rat(1)}, {0, 2, 1, Rat(2)}, {1, 2, 2, Rat(1)}});
    if (name == "sl2")
        return make({{0, 1, 1, Rat(2)}, {0, 2, 2, Rat(-2)}, {1, 2, 0, Rat(1)}});
    if (name == "heisenberg") return make({{1, 2, 0, Rat(1)}});
    if (name == "abelian3") return make({});
    throw Error("unknown reference algebra: " + name);
}

// --- subspaces -----------------------------------------------------------------

Subspace Subspace::span(std::vector<std::vector<Rat>> vectors, size_t ambient) {
    RatMat m(vectors.size(), ambient);
    for (size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != ambient) throw Error("coordinate dimension mismatch");
        for (size_t j = 0; j < ambient; ++j) m.at(i, j) = vectors[i][j];
    }
    size_t rank = m.rref().size();
    Subspace s;
    s.ambient_ = ambient;
    for (size_t i = 0; i < rank; ++i) {
        std::vector<Rat> row(ambient);
        for (size_t j = 0; j < ambient; ++j) row[j] = m.at(i, j);
        s.rows_.push_back(std::move(row));
    }
    return s;
}

Subspace Subspace::full(size_t ambient) {
    std::vector<std::vector<Rat>> rows;
    for (size_t i = 0; i < ambient; ++i) {
        std::vector<Rat> r(ambient, Rat(0));
        r[i] = 1;
        rows.push_back(std::move(r));
    }
    return span(std::move(rows), ambient);
}

bool Subspace::contains(const std::vector<Rat>& v) const {
    std::vector<std::vector<Rat>> rows = rows_;
    rows.push_back(v);
    return span(std::move(rows), ambient_).dim() == dim();
}

bool Subspace::contains(const Subspace& other) const {
    for (const auto& r : other.rows_)
        if (!contains(r)) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& o) const {
    if (ambient_ != o.ambient_) throw Error("coordinate dimension mismatch");
    std::vector<std::vector<Rat>> rows = rows_;
    rows.insert(rows.end(), o.rows_.begin(), o.rows_.end());
    return span(std::move(rows), ambient_);
}

Subspace Subspace::intersect(const Subspace& o) const {
    if (ambient_ != o.ambient_) throw Error("coordinate dimension mismatch");
    // x in A cap B: x = sum a_i A_i = sum b_j B_j; solve for the nullspace of
    // the stacked coefficient matrix [A^T | -B^T]
    const size_t na = dim(), nb = o.dim();
    if (na == 0 || nb == 0) return zero(ambient_);
    RatMat m(ambient_, na + nb);
    for (size_t j = 0; j < na; ++j)
        for (size_t i = 0; i < ambient_; ++i) m.at(i, j) = rows_[j][i];
    for (size_t j = 0; j < nb; ++j)
        for (size_t i = 0; i < ambient_; ++i) m.at(i, na + j) = -o.rows_[j][i];
    std::vector<std::vector<Rat>> vectors;
    for (const auto& nv : m.nullspace()) {
        std::vector<Rat> x(ambient_, Rat(0));
        for (size_t j = 0; j < na; ++j)
            for (size_t i = 0; i < ambient_; ++i) x[i] += nv[j] * rows_[j][i];
        vectors.push_back(std::move(x));
    }
    return span(std::move(vectors), ambient_);
}

Subspace bracket_span(const LieAlgebraTable& g, const Subspace& a, const Subspace& b) {
    std::vector<std::vector<Rat>> vectors;
    for (const auto& x : a.rows())
        for (const auto& y : b.rows()) vectors.push_back(g.bracket(x, y));
    return Subspace::span(std::move(vectors), g.dim());
}

std::vector<Subspace> derived_series(const LieAlgebraTable& g) {
    std::vector<Subspace> series{Subspace::full(g.dim())};
    for (;;) {
        const Subspace& prev = series.back();
        Subspace next = bracket_span(g, prev, prev);
        bool stable = next == prev;
        series.push_back(next);
        if (stable || series.back().dim() == 0) break;
    }
    return series;
}

RatMat killing_form(const LieAlgebraTable& g) {
    const size_t n = g.dim();
    std::vector<RatMat> ad(n, RatMat(n, n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) ad[i].at(k, j) = g.c[i][j][k];
    RatMat kf(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            Rat tr = (ad[i] * ad[j]).trace();
            kf.at(i, j) = tr;
            kf.at(j, i) = tr;
        }
    return kf;
}

Subspace radical(const LieAlgebraTable& g) {
    const size_t n = g.dim();
    RatMat kf = killing_form(g);
    auto series = derived_series(g);
    const Subspace& derived = series.size() > 1 ? series[1] : series[0];

    // rows: kappa(x, w) = 0 for each spanning w of [g,g]
    RatMat sys(derived.dim(), n);
    for (size_t r = 0; r < derived.dim(); ++r) {
        std::vector<Rat> kw = kf.apply(derived.rows()[r]);
        for (size_t j = 0; j < n; ++j) sys.at(r, j) = kw[j];
    }
    Subspace rad = Subspace::span(sys.nullspace(), n);

    // internal consistency: an ideal with a terminating derived chain
    Subspace br = bracket_span(g, Subspace::full(n), rad);
    if (!rad.contains(br)) throw Error("internal: radical is not an ideal");
    solvable_chain(g, rad);
    return rad;
}

LeviReport levi_check(const LieAlgebraTable& g, const Subspace& s) {
    LeviReport rep;
    rep.subalgebra = s.contains(bracket_span(g, s, s));

    RatMat kf = killing_form(g);
    RatMat restricted(s.dim(), s.dim());
    for (size_t i = 0; i < s.dim(); ++i) {
        std::vector<Rat> kw = kf.apply(s.rows()[i]);
        for (size_t j = 0; j < s.dim(); ++j) {
            Rat v(0);
            for (size_t k = 0; k < g.dim(); ++k) v += s.rows()[j][k] * kw[k];
            restricted.at(i, j) = v;
        }
    }
    rep.killing_nondegenerate = s.dim() > 0 && restricted.det() != 0;

    Subspace rad = radical(g);
    rep.trivial_intersection = s.intersect(rad).dim() == 0;
    rep.complements_radical = s.sum(rad).dim() == g.dim();
    return rep;
}

std::vector<Subspace> solvable_chain(const LieAlgebraTable& g, const Subspace& r) {
    std::vector<Subspace> chain{r};
    for (;;) {
        const Subspace& prev = chain.back();
        if (prev.dim() == 0) break;
        Subspace next = bracket_span(g, prev, prev);
        if (next == prev) throw Error("not solvable");
        chain.push_back(next);
    }
    return chain;
}

std::vector<Subspace> solvable_chain(const LieAlgebraTable& r) {
    return solvable_chain(r, Subspace::full(r.dim()));
}

bool check_homomorphism(const RatMat& map, const LieAlgebraTable& src,
                        const LieAlgebraTable& dst) {
    const size_t n = src.dim();
    if (map.rows() != dst.dim() || map.cols() != n) throw Error("map dimension mismatch");
    if (dst.dim() != n) return false;
    if (!map.invertible()) return false;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            std::vector<Rat> lhs = map.apply(src.c[i][j]);
            std::vector<Rat> ti(n), tj(n);
            for (size_t k = 0; k < n; ++k) {
                ti[k] = map.at(k, i);
                tj[k] = map.at(k, j);
            }
            std::vector<Rat> rhs = dst.bracket(ti, tj);
            if (lhs != rhs) return false;
        }
    return true;
}

std::optional<RatMat> diagonal_iso_search(const LieAlgebraTable& src,
                                          const LieAlgebraTable& dst) {
    if (src.dim() != dst.dim()) return std::nullopt;
    const size_t n = src.dim();
    std::vector<Rat> candidates;
    for (long p : {1, -1, 2, -2, 3, -3})
        for (long q : {1, 2, 3}) candidates.push_back(rat(p, q));

    std::vector<size_t> idx(n, 0);
    for (;;) {
        RatMat m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = candidates[idx[i]];
        if (check_homomorphism(m, src, dst)) return m;
        size_t pos = 0;
        while (pos < n && ++idx[pos] == candidates.size()) idx[pos++] = 0;
        if (pos == n) return std::nullopt;
    }
}

} // namespace approxsym
