#include "approxsym/detsolve.hpp"

#include <algorithm>
#include <functional>

#include "approxsym/parser.hpp"

namespace approxsym {

PerturbedPDE make_pde(const Expr& f0, const Expr& f1) {
    if (f0.contains(Symbol::eps()) || f1.contains(Symbol::eps()))
        throw Error("F0 and F1 must not contain eps");
    if (f0.is_zero()) throw Error("F0 must be nonzero");
    PerturbedPDE p{f0, f1, std::max(jet_order_of(f0), jet_order_of(f1))};
    evolution_rhs(p); // validates evolution form
    return p;
}

Ansatz ansatz_from_degree(int n) {
    if (n < 0) throw Error("ansatz degree must be nonnegative");
    return Ansatz{n, n, std::max(0, n - 1), std::max(0, n - 1)};
}

namespace {

bool has_t_jets(const Expr& e) {
    std::set<Symbol> syms;
    e.symbols(syms);
    for (const auto& s : syms)
        if (s.is_jet() && s.jet_t() > 0) return true;
    return false;
}

Expr solve_linear_for_ut(const Expr& f) {
    // f = c*u_t + rest, c and rest free of t-derivatives
    const Base ut = Base::sym(Symbol::jet(0, 1));
    if (!f.den().is_constant()) throw Error("not an evolution equation");
    auto parts = f.num().collect_by(ut);
    Expr c, rest;
    for (const auto& [e, p] : parts) {
        if (e == 0)
            rest = Expr::from_parts(p, f.den());
        else if (e == 1)
            c = Expr::from_parts(p, f.den());
        else
            throw Error("not an evolution equation");
    }
    if (c.is_zero()) throw Error("not an evolution equation");
    if (has_t_jets(c) || has_t_jets(rest)) throw Error("not an evolution equation");
    return -rest / c;
}

} // namespace

Expr evolution_rhs(const PerturbedPDE& pde) { return solve_linear_for_ut(pde.f0); }

Expr perturbed_rhs(const PerturbedPDE& pde) {
    // u_t from (c0 + eps c1) u_t + (r0 + eps r1) = 0, exact to first order
    Expr rhs0 = solve_linear_for_ut(pde.f0);
    if (pde.f1.is_zero()) return rhs0;
    const Symbol eps = Symbol::eps();
    const Symbol ut = Symbol::jet(0, 1);
    // first-order correction: -(F1 evaluated at u_t = rhs0) / (dF0/du_t)
    Expr c0 = diff(pde.f0, ut);
    std::map<Symbol, Expr> sub{{ut, rhs0}};
    Expr f1_on = substitute(pde.f1, sub);
    return rhs0 - Expr(eps) * f1_on / c0;
}

Expr on_shell(const Expr& e, const Expr& ut_value) {
    if (has_t_jets(ut_value)) throw Error("u_t value must be free of t-derivatives");
    std::set<Symbol> syms;
    e.symbols(syms);
    std::vector<Symbol> tjets;
    for (const auto& s : syms)
        if (s.is_jet() && s.jet_t() > 0) tjets.push_back(s);
    if (tjets.empty()) return e;

    // V(nx,1) = D_x^nx(ut_value); V(nx,nt) = D_t V(nx,nt-1) with t-jets
    // re-eliminated. Values carry x-derivatives only.
    std::map<std::pair<int, int>, Expr> memo;
    std::function<Expr(int, int)> value = [&](int nx, int nt) -> Expr {
        auto it = memo.find({nx, nt});
        if (it != memo.end()) return it->second;
        Expr v;
        if (nt == 1) {
            v = ut_value;
            for (int i = 0; i < nx; ++i)
                v = total_derivative(v, Direction::X, jet_order_of(v) + 1);
        } else {
            Expr prev = value(nx, nt - 1);
            Expr dv = total_derivative(prev, Direction::T, jet_order_of(prev) + 1);
            std::set<Symbol> ds;
            dv.symbols(ds);
            std::map<Symbol, Expr> bind;
            for (const auto& s : ds)
                if (s.is_jet() && s.jet_t() > 0) bind.emplace(s, value(s.jet_x(), s.jet_t()));
            v = bind.empty() ? dv : substitute(dv, bind);
        }
        memo.emplace(std::make_pair(nx, nt), v);
        return v;
    };

    std::map<Symbol, Expr> bind;
    for (const auto& s : tjets) bind.emplace(s, value(s.jet_x(), s.jet_t()));
    return substitute(e, bind);
}

Expr exact_residual(const VectorField& X, const PerturbedPDE& pde) {
    if (X.xi.contains(Symbol::eps()) || X.tau.contains(Symbol::eps()) ||
        X.phi.contains(Symbol::eps()))
        throw Error("exact residual requires an eps-free field");
    Expr a = apply_prolonged(prolong(X, pde.jet_order), pde.f0);
    return on_shell(a, evolution_rhs(pde));
}

EpsTruncated approximate_residual(const VectorField& X, const PerturbedPDE& pde) {
    Expr f = pde.f0 + Expr(Symbol::eps()) * pde.f1;
    Expr a = apply_prolonged(prolong(X, pde.jet_order), f);
    return eps_truncate(on_shell(a, perturbed_rhs(pde)));
}

// --- ansatz machinery ---------------------------------------------------------

namespace {

struct AnsatzTerm {
    int comp; // 0 = xi, 1 = tau, 2 = phi*u, 3 = phi constant part
    int px, pt;
};

std::vector<AnsatzTerm> ansatz_terms(const Ansatz& a) {
    std::vector<AnsatzTerm> ts;
    auto push = [&ts](int comp, int deg) {
        for (int px = 0; px <= deg; ++px)
            for (int pt = 0; px + pt <= deg; ++pt) ts.push_back({comp, px, pt});
    };
    push(0, a.xi_deg);
    push(1, a.tau_deg);
    push(2, a.phi_u_deg);
    push(3, a.phi_c_deg);
    return ts;
}

std::string unknown_prefix(const PerturbedPDE& pde) {
    std::set<Symbol> syms;
    pde.f0.symbols(syms);
    pde.f1.symbols(syms);
    std::string prefix = "k_";
    for (;;) {
        bool clash = false;
        for (const auto& s : syms)
            if (s.kind() == SymbolKind::Parameter && s.name().rfind(prefix, 0) == 0) clash = true;
        if (!clash) return prefix;
        prefix.insert(prefix.begin(), 'k');
    }
}

VectorField generic_field(const std::vector<AnsatzTerm>& ts, const std::vector<Symbol>& ks) {
    const Expr x(Symbol::x()), t(Symbol::t()), u(Symbol::u());
    VectorField f{Expr(0), Expr(0), Expr(0)};
    for (size_t i = 0; i < ts.size(); ++i) {
        Expr mono = Expr(ks[i]) * x.pow(Rat(ts[i].px)) * t.pow(Rat(ts[i].pt));
        switch (ts[i].comp) {
            case 0: f.xi = f.xi + mono; break;
            case 1: f.tau = f.tau + mono; break;
            case 2: f.phi = f.phi + mono * u; break;
            case 3: f.phi = f.phi + mono; break;
        }
    }
    return f;
}

VectorField field_from_vector(const std::vector<AnsatzTerm>& ts, const std::vector<Rat>& v) {
    const Expr x(Symbol::x()), t(Symbol::t()), u(Symbol::u());
    VectorField f{Expr(0), Expr(0), Expr(0)};
    for (size_t i = 0; i < ts.size(); ++i) {
        if (v[i] == 0) continue;
        Expr mono = Expr(v[i]) * x.pow(Rat(ts[i].px)) * t.pow(Rat(ts[i].pt));
        switch (ts[i].comp) {
            case 0: f.xi = f.xi + mono; break;
            case 1: f.tau = f.tau + mono; break;
            case 2: f.phi = f.phi + mono * u; break;
            case 3: f.phi = f.phi + mono; break;
        }
    }
    return f;
}

// Collects the residual (plus inhomogeneous source) into rows indexed by the
// unknown-free part of each monomial.
LinearSystem collect_rows(const Expr& residual, const std::vector<Symbol>& ks) {
    std::set<Symbol> unknown_set(ks.begin(), ks.end());
    std::map<Symbol, size_t> index;
    for (size_t i = 0; i < ks.size(); ++i) index.emplace(ks[i], i);

    std::map<Monomial, std::pair<std::map<size_t, Rat>, Rat>, MonoLess> rows;
    for (const auto& [m, c] : residual.num().terms) {
        Monomial key;
        int unknown_count = 0;
        size_t unknown_idx = 0;
        for (const auto& f : m.factors) {
            bool is_unknown = f.base.tag() == Base::Tag::Sym &&
                              unknown_set.count(f.base.symbol()) > 0;
            if (is_unknown) {
                if (f.exp != 1) throw Error("internal: determining system is not linear");
                ++unknown_count;
                unknown_idx = index.at(f.base.symbol());
            } else {
                key.factors.push_back(f);
            }
        }
        if (unknown_count > 1) throw Error("internal: determining system is not linear");
        auto& row = rows[key];
        if (unknown_count == 1)
            row.first[unknown_idx] += c;
        else
            row.second += c;
    }

    LinearSystem sys;
    for (const auto& k : ks) sys.unknowns.push_back(k.name());
    sys.matrix = RatMat(rows.size(), ks.size());
    sys.rhs.assign(rows.size(), Rat(0));
    size_t r = 0;
    for (const auto& [key, row] : rows) {
        sys.row_keys.push_back(key);
        for (const auto& [j, c] : row.first) sys.matrix.at(r, j) = c;
        sys.rhs[r] = row.second;
        ++r;
    }
    return sys;
}

std::vector<Symbol> unknown_symbols(const std::string& prefix, size_t n) {
    std::vector<Symbol> ks;
    for (size_t i = 0; i < n; ++i) ks.push_back(Symbol::parameter(prefix + std::to_string(i)));
    return ks;
}

// basis ordering: sparser coefficient vectors first, then lexicographic
bool coeff_vector_less(const std::vector<Rat>& va, const std::vector<Rat>& vb) {
    auto nz = [](const std::vector<Rat>& v) {
        size_t n = 0;
        for (const auto& q : v)
            if (q != 0) ++n;
        return n;
    };
    size_t na = nz(va), nb = nz(vb);
    if (na != nb) return na < nb;
    return va < vb;
}

} // namespace

std::string LinearSystem::dump() const {
    std::string out;
    for (size_t r = 0; r < matrix.rows(); ++r) {
        Expr key = Expr::from_parts(Poly::single(row_keys[r], Rat(1)), Poly::constant(1));
        out += print(key) + " :";
        bool first = true;
        for (size_t j = 0; j < matrix.cols(); ++j) {
            const Rat& c = matrix.at(r, j);
            if (c == 0) continue;
            if (first) {
                out += " " + (c == 1 ? unknowns[j] : rat_str(c) + "*" + unknowns[j]);
                first = false;
            } else {
                out += (c > 0 ? " + " : " - ");
                Rat ac = abs(c);
                out += ac == 1 ? unknowns[j] : rat_str(ac) + "*" + unknowns[j];
            }
        }
        if (rhs[r] != 0) {
            out += first ? " " + rat_str(rhs[r]) : (rhs[r] > 0 ? " + " : " - ") + rat_str(abs(rhs[r]));
            first = false;
        }
        if (first) out += " 0";
        out += "\n";
    }
    return out;
}

LinearSystem exact_system(const PerturbedPDE& pde, const Ansatz& a) {
    auto ts = ansatz_terms(a);
    auto ks = unknown_symbols(unknown_prefix(pde), ts.size());
    Expr residual = exact_residual(generic_field(ts, ks), pde);
    return collect_rows(residual, ks);
}

GeneratorBasis solve_exact(const PerturbedPDE& pde, const Ansatz& a) {
    auto ts = ansatz_terms(a);
    auto ks = unknown_symbols(unknown_prefix(pde), ts.size());
    Expr residual = exact_residual(generic_field(ts, ks), pde);
    LinearSystem sys = collect_rows(residual, ks);
    for (const auto& q : sys.rhs)
        if (q != 0) throw Error("internal: exact determining system is inhomogeneous");

    auto null_basis = sys.matrix.nullspace();
    std::vector<std::pair<std::vector<Rat>, VectorField>> found;
    for (auto& v : null_basis) {
        auto pv = primitive_vector(std::move(v));
        found.emplace_back(pv, field_from_vector(ts, pv));
    }
    std::sort(found.begin(), found.end(),
              [](const auto& l, const auto& r) { return coeff_vector_less(l.first, r.first); });

    GeneratorBasis basis;
    for (auto& [v, f] : found) {
        if (!exact_residual(f, pde).is_zero())
            throw Error("internal: solver returned a field with nonzero residual");
        basis.fields.push_back(TaggedField{f, 0});
    }
    return basis;
}

Expr auxiliary_H(const VectorField& X0, const PerturbedPDE& pde) {
    Expr r0 = exact_residual(X0, pde); // also rejects eps-carrying fields
    if (!r0.is_zero()) throw Error("X0 is not an exact symmetry");
    Expr f = pde.f0 + Expr(Symbol::eps()) * pde.f1;
    Expr a = apply_prolonged(prolong(X0, pde.jet_order), f);
    EpsTruncated tr = eps_truncate(on_shell(a, perturbed_rhs(pde)));
    if (!tr.order0.is_zero()) throw Error("X0 is not an exact symmetry");
    return tr.order1;
}

DeformationSolution solve_deformation(const VectorField& X0, const PerturbedPDE& pde,
                                      const Ansatz& a) {
    Expr h = auxiliary_H(X0, pde);
    auto ts = ansatz_terms(a);
    auto ks = unknown_symbols(unknown_prefix(pde), ts.size());
    Expr lhs = exact_residual(generic_field(ts, ks), pde) + h;
    LinearSystem sys = collect_rows(lhs, ks);

    std::vector<Rat> neg_rhs;
    neg_rhs.reserve(sys.rhs.size());
    for (const auto& q : sys.rhs) neg_rhs.push_back(-q);
    auto particular = sys.matrix.solve(neg_rhs);
    if (!particular) throw Error("unstable symmetry");

    DeformationSolution out;
    out.particular = field_from_vector(ts, *particular);
    for (auto& v : sys.matrix.nullspace())
        out.homogeneous.push_back(field_from_vector(ts, primitive_vector(std::move(v))));
    return out;
}

std::vector<VectorField> stable_subspace(const PerturbedPDE& pde, const Ansatz& a) {
    GeneratorBasis exact = solve_exact(pde, a);
    const size_t n = exact.dimension();
    if (n == 0) return {};

    // one shared determining system: the X1 unknowns plus marker unknowns
    // B_i multiplying H(exact_i), so that all rows live over one key set
    auto ts = ansatz_terms(a);
    std::string prefix = unknown_prefix(pde);
    auto ks = unknown_symbols(prefix, ts.size());
    std::vector<Symbol> markers;
    for (size_t i = 0; i < n; ++i)
        markers.push_back(Symbol::parameter(prefix + "b" + std::to_string(i)));

    Expr combined = exact_residual(generic_field(ts, ks), pde);
    for (size_t i = 0; i < n; ++i)
        combined = combined + Expr(markers[i]) * auxiliary_H(exact.fields[i].field, pde);

    std::vector<Symbol> unknowns = ks;
    unknowns.insert(unknowns.end(), markers.begin(), markers.end());
    LinearSystem sys = collect_rows(combined, unknowns);

    const size_t rows = sys.matrix.rows();
    RatMat m(rows, ks.size()), h(rows, n);
    for (size_t r = 0; r < rows; ++r) {
        for (size_t j = 0; j < ks.size(); ++j) m.at(r, j) = sys.matrix.at(r, j);
        for (size_t i = 0; i < n; ++i) h.at(r, i) = sys.matrix.at(r, ks.size() + i);
    }

    // sum_i a_i H_i must lie in the column space of m: for every left-null
    // vector l of m this imposes (l^T h) a = 0
    auto left_null = m.transpose().nullspace();
    RatMat constraints(left_null.size(), n);
    for (size_t r = 0; r < left_null.size(); ++r) {
        auto lh = h.transpose().apply(left_null[r]);
        for (size_t i = 0; i < n; ++i) constraints.at(r, i) = lh[i];
    }

    std::vector<VectorField> stable;
    for (auto& coeffs : constraints.nullspace()) {
        auto pv = primitive_vector(std::move(coeffs));
        VectorField f{Expr(0), Expr(0), Expr(0)};
        for (size_t i = 0; i < n; ++i)
            if (pv[i] != 0) f = f + exact.fields[i].field.scale(Expr(pv[i]));
        solve_deformation(f, pde, a); // re-verify, throws if not actually stable
        stable.push_back(std::move(f));
    }
    return stable;
}

GeneratorBasis approximate_symmetries(const PerturbedPDE& pde, const Ansatz& a) {
    GeneratorBasis exact = solve_exact(pde, a);
    const Expr eps(Symbol::eps());
    GeneratorBasis out;
    for (const auto& f : stable_subspace(pde, a)) {
        DeformationSolution def = solve_deformation(f, pde, a);
        out.fields.push_back(TaggedField{f + def.particular.scale(eps), 0});
    }
    for (const auto& tf : exact.fields)
        out.fields.push_back(TaggedField{tf.field.scale(eps), 1});
    for (const auto& tf : out.fields) {
        EpsTruncated r = approximate_residual(tf.field, pde);
        if (!r.order0.is_zero() || !r.order1.is_zero())
            throw Error("internal: approximate symmetry has nonzero residual");
    }
    return out;
}

// --- span utilities -------------------------------------------------------------

namespace {

using CoordKey = std::pair<int, Monomial>; // component index, coefficient monomial

struct CoordKeyLess {
    bool operator()(const CoordKey& a, const CoordKey& b) const {
        if (a.first != b.first) return a.first < b.first;
        return MonoLess{}(a.second, b.second);
    }
};

void scan_field(const VectorField& f, std::map<CoordKey, size_t, CoordKeyLess>& index) {
    const Expr* comps[3] = {&f.xi, &f.tau, &f.phi};
    for (int c = 0; c < 3; ++c) {
        if (!comps[c]->den().is_constant())
            throw Error("field coefficients must be polynomial for span computations");
        for (const auto& [m, q] : comps[c]->num().terms) index.emplace(CoordKey{c, m}, 0);
    }
}

std::vector<Rat> flatten(const VectorField& f,
                         const std::map<CoordKey, size_t, CoordKeyLess>& index) {
    std::vector<Rat> v(index.size(), Rat(0));
    const Expr* comps[3] = {&f.xi, &f.tau, &f.phi};
    for (int c = 0; c < 3; ++c) {
        Rat den = comps[c]->den().constant_value();
        for (const auto& [m, q] : comps[c]->num().terms) v[index.at(CoordKey{c, m})] = q / den;
    }
    return v;
}

std::map<CoordKey, size_t, CoordKeyLess> build_index(const std::vector<VectorField>& fields) {
    std::map<CoordKey, size_t, CoordKeyLess> index;
    for (const auto& f : fields) scan_field(f, index);
    size_t i = 0;
    for (auto& [k, v] : index) v = i++;
    return index;
}

} // namespace

RatMat field_matrix(const std::vector<VectorField>& fields) {
    auto index = build_index(fields);
    RatMat m(index.size(), fields.size());
    for (size_t j = 0; j < fields.size(); ++j) {
        auto col = flatten(fields[j], index);
        for (size_t i = 0; i < col.size(); ++i) m.at(i, j) = col[i];
    }
    return m;
}

std::optional<std::vector<Rat>> coordinates_in(const std::vector<VectorField>& basis,
                                               const VectorField& w) {
    std::vector<VectorField> all = basis;
    all.push_back(w);
    auto index = build_index(all);
    RatMat m(index.size(), basis.size());
    for (size_t j = 0; j < basis.size(); ++j) {
        auto col = flatten(basis[j], index);
        for (size_t i = 0; i < col.size(); ++i) m.at(i, j) = col[i];
    }
    return m.solve(flatten(w, index));
}

bool in_span(const std::vector<VectorField>& basis, const VectorField& w) {
    return coordinates_in(basis, w).has_value();
}

bool same_span(const std::vector<VectorField>& a, const std::vector<VectorField>& b) {
    for (const auto& f : b)
        if (!in_span(a, f)) return false;
    for (const auto& f : a)
        if (!in_span(b, f)) return false;
    return true;
}

} // namespace approxsym
