#include "approxsym/reference.hpp"

#include "approxsym/adjoint.hpp"
#include "approxsym/harry_dym.hpp"

namespace approxsym::reference {

namespace {

std::array<std::array<SparseVec, 10>, 10> build_commutators() {
    std::array<std::array<SparseVec, 10>, 10> t;
    auto set = [&t](int i, int j, int k, long num, long den = 1) {
        t[i][j].push_back({k, rat(num, den)});
        t[j][i].push_back({k, rat(-num, den)});
    };
    // row v1
    set(0, 2, 0, 1);  // [v1,v3] = v1
    set(0, 4, 2, 2);  // [v1,v5] = 2 v3
    set(0, 7, 5, 1);  // [v1,v8] = v6
    set(0, 9, 7, 2);  // [v1,v10] = 2 v8
    // row v2
    set(1, 3, 1, 12); // printed [v2,v4] = 12 v2
    set(1, 8, 6, 3);  // [v2,v9] = 3 v7
    // row v3
    set(2, 4, 4, 1);   // [v3,v5] = v5
    set(2, 5, 5, -1);  // [v3,v6] = -v6
    set(2, 9, 9, 1);   // [v3,v10] = v10
    // row v4
    set(3, 6, 6, -3); // [v4,v7] = -3 v7
    // row v5
    set(4, 5, 7, -2); // [v5,v6] = -2 v8
    set(4, 7, 9, -1); // [v5,v8] = -v10
    return t;
}

std::string poly_term_str(const Rat& c, int deg) {
    std::string s;
    Rat a = abs(c);
    if (a != 1 || deg == 0) s += rat_str(a);
    if (deg >= 1) {
        if (!s.empty()) s += "*";
        s += "mu";
        if (deg > 1) s += "^" + std::to_string(deg);
    }
    return s;
}

std::string render_terms(const std::vector<PubAdjTerm>& ts) {
    std::string s;
    for (const auto& t : ts) {
        std::string factor;
        if (t.lambda != 0) factor = "e^(" + rat_str(t.lambda) + "*mu)";
        for (size_t d = 0; d < t.poly.size(); ++d) {
            const Rat& c = t.poly[d];
            if (c == 0) continue;
            std::string piece;
            if (!factor.empty()) piece = factor + (d > 0 || abs(c) != 1 ? "*" : "");
            std::string pt = poly_term_str(c, static_cast<int>(d));
            if (!(d == 0 && abs(c) == 1 && !factor.empty())) piece += pt;
            if (!factor.empty() && d == 0 && abs(c) == 1) piece = factor;
            std::string vk = "v" + std::to_string(t.k + 1);
            std::string term = piece.empty() || piece == "1" ? vk : piece + "*" + vk;
            if (s.empty())
                s = (c < 0 ? "-" : "") + term;
            else
                s += (c < 0 ? " - " : " + ") + term;
        }
    }
    return s.empty() ? "0" : s;
}

std::array<std::array<PubAdjEntry, 10>, 10> build_adjoint() {
    std::array<std::array<PubAdjEntry, 10>, 10> t;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) t[i][j].terms = {{j, Rat(0), {Rat(1)}}};

    auto set = [&t](int i, int j, std::vector<PubAdjTerm> terms) {
        t[i][j].terms = std::move(terms);
    };
    const Rat z(0);
    // row v1
    set(0, 2, {{2, z, {Rat(1)}}, {0, z, {Rat(0), Rat(-1)}}});
    set(0, 4, {{4, z, {Rat(1)}}, {2, z, {Rat(0), Rat(-2)}}, {0, z, {Rat(0), Rat(0), Rat(1)}}});
    set(0, 7, {{7, z, {Rat(1)}}, {5, z, {Rat(0), Rat(-1)}}});
    set(0, 9, {{9, z, {Rat(1)}}, {7, z, {Rat(0), Rat(-2)}}, {5, z, {Rat(0), Rat(0), Rat(1)}}});
    // row v2 (the printed 12 mu)
    set(1, 3, {{3, z, {Rat(1)}}, {1, z, {Rat(0), Rat(-12)}}});
    set(1, 8, {{8, z, {Rat(1)}}, {6, z, {Rat(0), Rat(-3)}}});
    // row v3
    set(2, 0, {{0, Rat(1), {Rat(1)}}});
    set(2, 4, {{4, Rat(-1), {Rat(1)}}});
    set(2, 5, {{5, Rat(1), {Rat(1)}}});
    set(2, 9, {{9, Rat(-1), {Rat(1)}}});
    // row v4 (the printed e^(12 mu))
    set(3, 1, {{1, Rat(12), {Rat(1)}}});
    set(3, 6, {{6, Rat(3), {Rat(1)}}});
    // row v5
    set(4, 0, {{0, z, {Rat(1)}}, {2, z, {Rat(0), Rat(2)}}, {4, z, {Rat(0), Rat(0), Rat(1)}}});
    set(4, 2, {{2, z, {Rat(1)}}, {4, z, {Rat(0), Rat(1)}}});
    set(4, 5, {{5, z, {Rat(1)}}, {7, z, {Rat(0), Rat(2)}}, {9, z, {Rat(0), Rat(0), Rat(1)}}});
    // row v6
    set(5, 2, {{2, z, {Rat(1)}}, {5, z, {Rat(0), Rat(-1)}}});
    set(5, 4, {{4, z, {Rat(1)}}, {7, z, {Rat(0), Rat(-2)}}});
    // row v7
    set(6, 3, {{3, z, {Rat(1)}}, {6, z, {Rat(0), Rat(-3)}}});
    // row v8
    set(7, 0, {{0, z, {Rat(1)}}, {5, z, {Rat(0), Rat(1)}}});
    set(7, 4, {{4, z, {Rat(1)}}, {9, z, {Rat(0), Rat(-1)}}});
    // row v9
    set(8, 1, {{1, z, {Rat(1)}}, {6, z, {Rat(0), Rat(3)}}});
    // row v10
    set(9, 0, {{0, z, {Rat(1)}}, {7, z, {Rat(0), Rat(2)}}});
    set(9, 2, {{2, z, {Rat(1)}}, {9, z, {Rat(0), Rat(1)}}});

    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) t[i][j].printed = render_terms(t[i][j].terms);

    // the (v5, v8) entry is garbled in print
    t[4][7].printed = "v8 + mu + v10";
    t[4][7].malformed = true;
    t[4][7].terms.clear();
    return t;
}

std::vector<PubFamily> build_optimal() {
    std::vector<PubFamily> fs;
    auto add = [&fs](std::string label, std::map<int, std::string> coords) {
        fs.push_back({std::move(label), std::move(coords)});
    };
    add("v^1", {{7, "1"}});
    add("v^2", {{6, "1"}, {7, "a"}});
    add("v^3", {{5, "1"}, {7, "1"}});
    add("v^4", {{5, "1"}, {6, "-1"}, {7, "1"}});
    add("v^5", {{5, "1"}, {6, "1"}, {7, "1"}});
    add("v^6", {{1, "1"}, {7, "a"}});
    add("v^7", {{1, "1"}, {5, "-1"}, {7, "a"}});
    add("v^8", {{1, "1"}, {5, "1"}, {7, "a"}});
    add("v^9", {{0, "1"}, {1, "a"}, {6, "b"}});
    add("v^10", {{0, "a"}, {1, "b"}, {4, "1"}, {5, "c"}, {6, "d"}});
    add("v^11", {{0, "a"}, {1, "b"}, {2, "1"}, {4, "c"}, {6, "d"}, {7, "e"}});
    add("v^12", {{0, "a"}, {2, "b"}, {3, "1"}, {4, "c"}, {5, "d"}, {7, "e"}});
    add("v^13", {{0, "a"}, {2, "b"}, {3, "c"}, {4, "d"}, {5, "e"}, {7, "f"}, {8, "1"}});
    add("v^14",
        {{0, "a"}, {1, "-1"}, {2, "b"}, {3, "c"}, {4, "d"}, {5, "e"}, {7, "f"}, {8, "1"}});
    add("v^15", {{0, "a"}, {1, "1"}, {2, "b"}, {3, "c"}, {4, "d"}, {5, "e"}, {7, "f"}, {8, "1"}});
    add("v^16", {{0, "a"}, {1, "1"}, {2, "b"}, {3, "c"}, {4, "d"}, {5, "e"}, {7, "f"}, {8, "1"}});
    return fs;
}

std::vector<PubInvariantRow> build_invariants() {
    std::vector<PubInvariantRow> rows;
    auto add = [&rows](std::string label, std::map<int, std::string> coords, std::string i1,
                       std::string i2) {
        rows.push_back({std::move(label), std::move(coords), std::move(i1), std::move(i2)});
    };
    add("v1", {{0, "1"}}, "t", "u");
    add("v2", {{1, "1"}}, "x", "u");
    add("v3", {{2, "1"}}, "t", "u/x");
    add("v4", {{3, "1"}}, "x", "u*t^1/3");
    add("v5", {{4, "1"}}, "t", "u/x^2");
    add("v7 + a*v8", {{6, "1"}, {7, "a"}}, "-ln(x)/a + t", "u/x");
    add("v6 + v8", {{5, "1"}, {7, "1"}}, "t", "u/(x + 1)");
    add("v6 - v7 + v8", {{5, "1"}, {6, "-1"}, {7, "1"}}, "ln(x + 1) + t", "u/(x + 1)");
    add("v6 + v7 + v8", {{5, "1"}, {6, "1"}, {7, "1"}}, "-ln(x + 1) + t", "u/(x + 1)");
    add("v2 + a*v8", {{1, "1"}, {7, "a"}}, "-ln(x)/(a*eps) + t", "u/x");
    add("v2 - v6 + a*v8", {{1, "1"}, {5, "-1"}, {7, "a"}}, "-ln(a*x - 1)/(a*eps) + t",
        "u/(a*x - 1)");
    add("v2 + v6 + a*v8", {{1, "1"}, {5, "1"}, {7, "a"}}, "-ln(a*x + 1)/(a*eps) + t",
        "u/(a*x + 1)");
    add("v1 + a*v2 + b*v7", {{0, "1"}, {1, "a"}, {6, "b"}}, "-b*eps*x - a*eps + t", "u");
    add("a*v1 + b*v2 + v5 + c*v6 + d*v7", {{0, "a"}, {1, "b"}, {4, "1"}, {5, "c"}, {6, "d"}},
        "(-d*eps - b)/sqrt(c*eps + a)*arctan(x/sqrt(c*eps + a)) + t", "u/(x^2 + c*eps + a)");
    return rows;
}

} // namespace

const std::array<std::array<SparseVec, 10>, 10>& published_commutators() {
    static const auto t = build_commutators();
    return t;
}

const std::array<std::array<PubAdjEntry, 10>, 10>& published_adjoint() {
    static const auto t = build_adjoint();
    return t;
}

const std::vector<PubFamily>& published_optimal_system() {
    static const auto t = build_optimal();
    return t;
}

const std::vector<PubInvariantRow>& published_invariant_rows() {
    static const auto t = build_invariants();
    return t;
}

RatMat published_semisimple_map() {
    // {v1, v3, v5} -> {w1, -w2, -w3}
    RatMat m(3, 3);
    m.at(0, 0) = 1;
    m.at(1, 1) = -1;
    m.at(2, 2) = -1;
    return m;
}

const char* published_exact_family() {
    return "xi0 = A_1 + A_2*x + A_3/2*x^2;  tau0 = A_4 + 3*A_5*t;  "
           "phi0 = (A_2 - 1/(3*A_5) + x*A_3)*u";
}

const char* published_deformation_family() {
    return "xi1 = (A_5 - A_2)*t - A_3*x*t + C_4*x - C_5 + C_3/2*x^2;  tau1 = C_1*t + C_2;  "
           "phi1 = (-A_3*t + C_4 + C_3*x + C_1/3)*u";
}

const char* published_quadratic_generator() { return "2*x^2*d/dx + x*u*d/du"; }

std::vector<TableDiff> commutator_diffs(const LieAlgebraTable& derived) {
    std::vector<TableDiff> diffs;
    const auto& pub = published_commutators();
    const size_t n = derived.dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            std::vector<Rat> pv(n, Rat(0));
            for (const auto& [k, q] : pub[i][j]) pv[k] = q;
            if (pv != derived.c[i][j]) {
                diffs.push_back(TableDiff{i, j, print_in_basis(pv), print_in_basis(derived.c[i][j])});
            }
        }
    return diffs;
}

std::vector<TableDiff> adjoint_diffs(const LieAlgebraTable& derived) {
    std::vector<TableDiff> diffs;
    const auto& pub = published_adjoint();
    const size_t n = derived.dim();
    for (size_t i = 0; i < n; ++i) {
        AdjointMatrix m = adjoint_matrix(derived, i);
        for (size_t j = 0; j < n; ++j) {
            bool mismatch = pub[i][j].malformed;
            if (!mismatch) {
                std::vector<ExpPoly> expect(n);
                for (const auto& t : pub[i][j].terms) {
                    UPoly p;
                    p.c = t.poly;
                    p.trim();
                    expect[t.k] = expect[t.k] + ExpPoly::from_upoly(p, t.lambda);
                }
                for (size_t k = 0; k < n; ++k)
                    if (!(m.entries[k][j] == expect[k])) mismatch = true;
            }
            if (mismatch) {
                std::string derived_str;
                for (size_t k = 0; k < n; ++k) {
                    if (m.entries[k][j].is_zero()) continue;
                    std::string c = print(m.entries[k][j]);
                    std::string piece = (c == "1" ? "" : "(" + c + ")*") + derived.labels[k];
                    derived_str += (derived_str.empty() ? "" : " + ") + piece;
                }
                diffs.push_back(TableDiff{i, j, pub[i][j].printed, derived_str});
            }
        }
    }
    return diffs;
}

} // namespace approxsym::reference
