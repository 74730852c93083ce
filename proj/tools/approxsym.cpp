#include <unistd.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "approxsym/harry_dym.hpp"
#include "approxsym/invariants.hpp"
#include "approxsym/optimal.hpp"
#include "approxsym/parser.hpp"
#include "approxsym/reference.hpp"

using namespace approxsym;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitDiffs = 1;
constexpr int kExitError = 2;

bool use_color() {
    const char* env = std::getenv("APPROXSYM_COLOR");
    if (env && std::string(env) == "0") return false;
    return isatty(STDOUT_FILENO);
}

std::string bold(const std::string& s) { return use_color() ? "\033[1m" + s + "\033[0m" : s; }
std::string good(const std::string& s) { return use_color() ? "\033[32m" + s + "\033[0m" : s; }
std::string bad(const std::string& s) { return use_color() ? "\033[31m" + s + "\033[0m" : s; }

struct RunConfig {
    std::string preset;
    std::string pde_text, perturb_text = "0";
    std::string format = "text";
    int ansatz_deg = 3;
    unsigned seed = 0;

    bool is_preset() const { return preset == "harry-dym"; }

    PerturbedPDE pde() const {
        if (!preset.empty() && !pde_text.empty())
            throw Error("--preset and --pde are mutually exclusive");
        if (is_preset()) return harry_dym();
        if (!preset.empty()) throw Error("unknown preset: " + preset);
        if (pde_text.empty()) throw Error("either --preset or --pde is required");
        return make_pde(parse(pde_text), parse(perturb_text));
    }
    Ansatz ansatz() const { return ansatz_from_degree(ansatz_deg); }
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--preset", cfg.preset, "built-in equation (harry-dym)");
    cmd->add_option("--pde", cfg.pde_text, "unperturbed equation F0 (expression text)");
    cmd->add_option("--perturb", cfg.perturb_text, "perturbation F1 (expression text)");
    cmd->add_option("--format", cfg.format, "text | json | latex")
        ->check(CLI::IsMember({"text", "json", "latex"}));
    cmd->add_option("--ansatz-deg", cfg.ansatz_deg, "polynomial ansatz degree (default 3)");
    cmd->add_option("--seed", cfg.seed, "seed for randomized checks");
}

std::string field_str(const VectorField& f) { return print(f); }

// --- symmetries -------------------------------------------------------------------

int cmd_symmetries(const RunConfig& cfg, const std::string& dump_path) {
    PerturbedPDE pde = cfg.pde();
    GeneratorBasis exact = solve_exact(pde, cfg.ansatz());

    if (!dump_path.empty()) {
        std::ofstream out(dump_path);
        out << exact_system(pde, cfg.ansatz()).dump();
    }

    struct Stability {
        bool stable = false;
        std::string h;
        std::string deformation;
    };
    std::vector<Stability> stab;
    GeneratorBasis approx;
    bool all_stable = true;
    for (const auto& tf : exact.fields) {
        Stability s;
        try {
            Expr h = auxiliary_H(tf.field, pde);
            DeformationSolution def = solve_deformation(tf.field, pde, cfg.ansatz());
            s.stable = true;
            s.h = print(h);
            s.deformation = field_str(def.particular);
        } catch (const Error& e) {
            s.stable = false;
            s.h = e.what();
            all_stable = false;
        }
        stab.push_back(std::move(s));
    }
    std::vector<VectorField> stable;
    if (exact.dimension() > 0) {
        stable = stable_subspace(pde, cfg.ansatz());
        approx = approximate_symmetries(pde, cfg.ansatz());
    }

    // published-form comparison (preset only)
    std::vector<std::pair<std::string, std::string>> diffs;
    if (cfg.is_preset()) {
        auto canonical = harry_dym_exact_basis();
        VectorField printed_x5{parse("2*x^2"), parse("0"), parse("x*u")};
        if (!exact_residual(printed_x5, pde).is_zero())
            diffs.emplace_back("exact generator 5: published " +
                                   std::string(reference::published_quadratic_generator()),
                               "derived " + field_str(canonical[4]) +
                                   " (published form fails the determining equation)");
        diffs.emplace_back(
            "generic family: published " + std::string(reference::published_exact_family()),
            "derived phi0 = (A_2 + x*A_3 - A_5/3)*u with tau0 = A_4 + A_5*t (residual-verified)");
        diffs.emplace_back(
            "approximate generators: published v3, v4, v5 carry no order-eps deformation",
            "derived deformations eps*(-t)*d/dx, eps*3*t*d/dx, eps*(-2*t*x*d/dx - 2*t*u*d/du)");
    }

    if (cfg.format == "json") {
        ordered_json j;
        j["equation"] = {{"f0", print(pde.f0)}, {"f1", print(pde.f1)}};
        j["exact"] = ordered_json::array();
        for (const auto& tf : exact.fields) j["exact"].push_back(field_str(tf.field));
        j["stability"] = ordered_json::array();
        for (size_t i = 0; i < stab.size(); ++i)
            j["stability"].push_back({{"generator", field_str(exact.fields[i].field)},
                                      {"stable", stab[i].stable},
                                      {"auxiliary_h", stab[i].h},
                                      {"deformation", stab[i].deformation}});
        j["stable_subspace"] = ordered_json::array();
        for (const auto& f : stable) j["stable_subspace"].push_back(field_str(f));
        j["approximate"] = ordered_json::array();
        for (const auto& tf : approx.fields)
            j["approximate"].push_back(
                {{"field", field_str(tf.field)}, {"eps_order", tf.eps_order}});
        j["published_diffs"] = ordered_json::array();
        for (const auto& [pub, der] : diffs)
            j["published_diffs"].push_back({{"published", pub}, {"derived", der}});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << bold("Exact symmetries") << " (" << exact.dimension() << "):\n";
        for (const auto& tf : exact.fields) std::cout << "  " << field_str(tf.field) << "\n";
        std::cout << bold("Stability") << ":\n";
        for (size_t i = 0; i < stab.size(); ++i) {
            std::cout << "  " << field_str(exact.fields[i].field) << ": "
                      << (stab[i].stable ? good("stable") : bad("unstable"))
                      << (stab[i].stable ? "  H = " + stab[i].h + "  X1 = " + stab[i].deformation
                                         : "")
                      << "\n";
        }
        if (!all_stable) {
            std::cout << bold("Stable subspace") << " (" << stable.size() << " of "
                      << exact.dimension() << "):\n";
            for (const auto& f : stable) std::cout << "  " << field_str(f) << "\n";
        }
        std::cout << bold("Approximate symmetries") << " (" << approx.dimension() << "):\n";
        for (const auto& tf : approx.fields)
            std::cout << "  " << field_str(tf.field)
                      << (tf.eps_order == 1 ? "   [eps-multiple]" : "") << "\n";
        if (!diffs.empty()) {
            std::cout << bold("Published-table differences") << ":\n";
            for (const auto& [pub, der] : diffs)
                std::cout << "  - " << pub << "\n    " << der << "\n";
        }
    }
    return diffs.empty() ? kExitClean : kExitDiffs;
}

// --- algebra ----------------------------------------------------------------------

std::vector<VectorField> algebra_basis(const RunConfig& cfg, const PerturbedPDE& pde) {
    if (cfg.is_preset()) return harry_dym_approximate_basis();
    GeneratorBasis b = approximate_symmetries(pde, cfg.ansatz());
    std::vector<VectorField> fields;
    for (const auto& tf : b.fields) fields.push_back(tf.field);
    if (fields.empty()) throw Error("empty basis");
    return fields;
}

std::string subspace_str(const Subspace& s) {
    std::string out = "span{";
    bool first = true;
    for (const auto& row : s.rows()) {
        if (!first) out += ", ";
        out += print_in_basis(row);
        first = false;
    }
    return out + "}";
}

int cmd_algebra(const RunConfig& cfg) {
    PerturbedPDE pde = cfg.pde();
    LieAlgebraTable g = structure_constants(algebra_basis(cfg, pde));

    auto series = derived_series(g);
    Subspace rad = radical(g);
    auto chain = solvable_chain(g, rad);

    // Levi candidate: for the preset the complement span{v1,v3,v5}
    std::optional<LeviReport> levi;
    std::optional<bool> published_map_ok;
    std::optional<std::string> iso_witness;
    std::vector<reference::TableDiff> diffs;
    if (cfg.is_preset()) {
        std::vector<std::vector<Rat>> s_rows;
        for (size_t i : {0, 2, 4}) {
            std::vector<Rat> r(10, Rat(0));
            r[i] = 1;
            s_rows.push_back(std::move(r));
        }
        Subspace s = Subspace::span(std::move(s_rows), 10);
        levi = levi_check(g, s);

        auto v = harry_dym_exact_basis();
        auto sub = structure_constants({v[0], v[2], v[4]});
        auto a38 = reference_algebra("A_{3,8}");
        published_map_ok = check_homomorphism(reference::published_semisimple_map(), sub, a38);
        if (auto w = diagonal_iso_search(sub, a38)) {
            std::string ws = "diag(";
            for (size_t i = 0; i < 3; ++i)
                ws += rat_str(w->at(i, i)) + (i + 1 < 3 ? ", " : ")");
            iso_witness = ws;
        }
        diffs = reference::commutator_diffs(g);
    }

    if (cfg.format == "json") {
        ordered_json j;
        j["table"] = ordered_json::parse(g.to_json());
        j["derived_series_dims"] = ordered_json::array();
        for (const auto& s : series) j["derived_series_dims"].push_back(s.dim());
        j["radical"] = subspace_str(rad);
        j["solvable_chain_dims"] = ordered_json::array();
        for (const auto& s : chain) j["solvable_chain_dims"].push_back(s.dim());
        if (levi)
            j["levi"] = {{"subalgebra", levi->subalgebra},
                         {"killing_nondegenerate", levi->killing_nondegenerate},
                         {"trivial_intersection", levi->trivial_intersection},
                         {"complements_radical", levi->complements_radical}};
        if (published_map_ok.has_value()) {
            j["reference_iso"] = {{"published_map_is_isomorphism", *published_map_ok},
                                  {"diagonal_witness", iso_witness ? *iso_witness : ""}};
        }
        j["published_diffs"] = ordered_json::array();
        for (const auto& d : diffs)
            j["published_diffs"].push_back({{"i", d.i},
                                            {"j", d.j},
                                            {"published", d.published},
                                            {"derived", d.derived}});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << bold("Commutator table") << " [" << g.dim() << " generators]\n";
        for (size_t i = 0; i < g.dim(); ++i)
            for (size_t k = i + 1; k < g.dim(); ++k)
                if (!std::all_of(g.c[i][k].begin(), g.c[i][k].end(),
                                 [](const Rat& q) { return q == 0; }))
                    std::cout << "  [" << g.labels[i] << ", " << g.labels[k]
                              << "] = " << print_in_basis(g.c[i][k]) << "\n";
        std::cout << bold("Derived series dims") << ": ";
        for (const auto& s : series) std::cout << s.dim() << " ";
        std::cout << "\n" << bold("Radical") << ": " << subspace_str(rad) << "\n";
        std::cout << bold("Solvable chain dims") << ": ";
        for (const auto& s : chain) std::cout << s.dim() << " ";
        std::cout << "\n";
        if (levi) {
            std::cout << bold("Levi part span{v1, v3, v5}") << ": subalgebra "
                      << (levi->subalgebra ? "yes" : "no") << ", killing nondegenerate "
                      << (levi->killing_nondegenerate ? "yes" : "no") << ", intersection trivial "
                      << (levi->trivial_intersection ? "yes" : "no") << ", complements radical "
                      << (levi->complements_radical ? "yes" : "no") << "\n";
        }
        if (published_map_ok.has_value()) {
            std::cout << bold("Reference algebra A_{3,8}") << ": printed map "
                      << (*published_map_ok ? "intertwines" : bad("does not intertwine"))
                      << "; diagonal witness " << (iso_witness ? good(*iso_witness) : bad("none"))
                      << "\n";
        }
        if (!diffs.empty()) {
            std::cout << bold("Published-table differences") << ":\n";
            for (const auto& d : diffs)
                std::cout << "  [" << g.labels[d.i] << ", " << g.labels[d.j] << "] published "
                          << d.published << ", derived " << d.derived << "\n";
        }
    }
    return diffs.empty() ? kExitClean : kExitDiffs;
}

// --- adjoint ----------------------------------------------------------------------

int cmd_adjoint(const RunConfig& cfg) {
    PerturbedPDE pde = cfg.pde();
    LieAlgebraTable g = structure_constants(algebra_basis(cfg, pde));

    std::vector<reference::TableDiff> diffs;
    if (cfg.is_preset()) diffs = reference::adjoint_diffs(g);

    if (cfg.format == "latex") {
        std::cout << latex_adjoint_table(g);
    } else if (cfg.format == "json") {
        ordered_json j;
        j["table"] = ordered_json::array();
        for (size_t i = 0; i < g.dim(); ++i) {
            AdjointMatrix m = adjoint_matrix(g, i);
            ordered_json row = ordered_json::array();
            for (size_t col = 0; col < g.dim(); ++col) {
                ordered_json cell = ordered_json::array();
                for (size_t k = 0; k < g.dim(); ++k)
                    if (!m.entries[k][col].is_zero())
                        cell.push_back({{"k", k}, {"coeff", print(m.entries[k][col])}});
                row.push_back(cell);
            }
            j["table"].push_back(row);
        }
        j["published_diffs"] = ordered_json::array();
        for (const auto& d : diffs)
            j["published_diffs"].push_back({{"i", d.i},
                                            {"j", d.j},
                                            {"published", d.published},
                                            {"derived", d.derived}});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text_adjoint_table(g);
        if (!diffs.empty()) {
            std::cout << bold("Published-table differences") << ":\n";
            for (const auto& d : diffs)
                std::cout << "  Ad(exp(mu*" << g.labels[d.i] << ")) " << g.labels[d.j]
                          << ": published " << d.published << ", derived " << d.derived << "\n";
        }
    }
    return diffs.empty() ? kExitClean : kExitDiffs;
}

// --- optimal ----------------------------------------------------------------------

std::vector<Rat> parse_vector(const std::string& text) {
    std::vector<Rat> v;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            v.push_back(rat_parse(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) v.push_back(rat_parse(cur));
    if (v.size() != 10) throw Error("--vector needs 10 comma-separated rationals");
    return v;
}

int cmd_optimal(const RunConfig& cfg, const std::string& vector_text, bool audit) {
    PerturbedPDE pde = cfg.pde();
    OptimalSystem sys(structure_constants(algebra_basis(cfg, pde)));

    int code = kExitClean;
    ordered_json j;
    if (!vector_text.empty()) {
        std::vector<Rat> w = parse_vector(vector_text);
        auto [rep, trace] = sys.normalize_vector(w);
        if (cfg.format == "json") {
            j["family"] = rep.family;
            j["representative"] = print_in_basis(rep.coords);
            j["parameters"] = ordered_json::object();
            for (const auto& [k, v] : rep.parameters) j["parameters"][k] = rat_str(v);
            j["trace"] = sys.trace_script(trace);
        } else {
            std::cout << bold("Family") << ": " << rep.family << "\n"
                      << bold("Representative") << ": " << print_in_basis(rep.coords) << "\n";
            if (!rep.parameters.empty()) {
                std::cout << bold("Parameters") << ":";
                for (const auto& [k, v] : rep.parameters) std::cout << " " << k << "=" << rat_str(v);
                std::cout << "\n";
            }
            std::cout << bold("Trace") << ":\n" << sys.trace_script(trace);
        }
    }
    if (audit) {
        AuditReport report = sys.audit_table(cfg.seed);
        if (cfg.format == "json") {
            j["audit"] = ordered_json::array();
            for (const auto& row : report.rows)
                j["audit"].push_back({{"label", row.label},
                                      {"family", row.family_reached},
                                      {"fixed_point", row.fixed_point}});
            j["duplicates"] = ordered_json::array();
            for (const auto& [a, b] : report.duplicates) j["duplicates"].push_back({a, b});
            j["notes"] = report.notes;
        } else {
            std::cout << bold("Audit of the published optimal system") << ":\n";
            for (const auto& row : report.rows)
                std::cout << "  " << row.label << " -> " << row.family_reached << " "
                          << (row.fixed_point ? good("fixed point") : bad("moved")) << "\n";
            for (const auto& [a, b] : report.duplicates)
                std::cout << "  duplicate rows: " << a << " and " << b << "\n";
            for (const auto& n : report.notes) std::cout << "  note: " << n << "\n";
        }
        if (!report.duplicates.empty() || !report.notes.empty()) code = kExitDiffs;
    }
    if (cfg.format == "json") std::cout << j.dump(2) << "\n";
    return code;
}

// --- invariants -------------------------------------------------------------------

int cmd_invariants(const RunConfig& cfg, const std::string& xi, const std::string& tau,
                   const std::string& phi, bool relaxed) {
    if (!xi.empty() || !tau.empty() || !phi.empty()) {
        VectorField g{parse(xi.empty() ? "0" : xi), parse(tau.empty() ? "0" : tau),
                      parse(phi.empty() ? "0" : phi)};
        InvariantPair pair;
        try {
            pair = characteristic_invariants(g);
        } catch (const Error& e) {
            std::cerr << "error: " << e.what()
                      << " (verify_invariant remains available for candidate invariants)\n";
            return kExitError;
        }
        if (cfg.format == "json") {
            ordered_json j;
            j["first"] = print(pair.first);
            j["second"] = print(pair.second);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << print(pair.first) << ", " << print(pair.second) << "\n";
        }
        return kExitClean;
    }

    if (!cfg.is_preset()) throw Error("the invariant table requires --preset harry-dym");
    auto rows = published_invariant_table();
    bool any_printed_failure = false;
    for (const auto& r : rows)
        if (!r.printed_first_ok || !r.printed_second_ok) any_printed_failure = true;

    if (cfg.format == "json") {
        ordered_json j = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json row;
            row["operator"] = r.label;
            row["printed"] = {{"first", print(r.printed_first)},
                              {"second", print(r.printed_second)},
                              {"first_ok", r.printed_first_ok},
                              {"second_ok", r.printed_second_ok}};
            if (relaxed)
                row["printed"]["first_ok_relaxed"] =
                    verify_invariant_relaxed(r.generator, r.printed_first);
            if (r.derived)
                row["derived"] = {{"first", print(r.derived->first)},
                                  {"second", print(r.derived->second)},
                                  {"ok", r.derived_ok}};
            j.push_back(row);
        }
        std::cout << j.dump(2) << "\n";
    } else if (cfg.format == "latex") {
        std::cout << latex_invariant_table(rows);
    } else {
        std::cout << text_invariant_table(rows);
    }
    return any_printed_failure ? kExitDiffs : kExitClean;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"approximate Lie symmetry pipeline for perturbed evolution equations"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string vector_text, dump_path, xi, tau, phi;
    bool audit = false, relaxed = false;

    auto* sym = app.add_subcommand("symmetries", "determining equations, stability, deformations");
    add_common(sym, cfg);
    sym->add_option("--dump-system", dump_path, "write the determining system rows to a file");

    auto* alg = app.add_subcommand("algebra", "commutators, derived series, radical, Levi part");
    add_common(alg, cfg);

    auto* adj = app.add_subcommand("adjoint", "closed-form adjoint representation table");
    add_common(adj, cfg);

    auto* opt = app.add_subcommand("optimal", "one-dimensional optimal system reduction");
    add_common(opt, cfg);
    opt->add_option("--vector", vector_text, "10 comma-separated rational coordinates");
    opt->add_flag("--audit", audit, "audit the published family table");

    auto* inv = app.add_subcommand("invariants", "differential invariants of the generators");
    add_common(inv, cfg);
    inv->add_option("--xi", xi, "d/dx coefficient of a single generator");
    inv->add_option("--tau", tau, "d/dt coefficient of a single generator");
    inv->add_option("--phi", phi, "d/du coefficient of a single generator");
    inv->add_flag("--relaxed", relaxed, "also report annihilation modulo eps^2");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sym->parsed()) return cmd_symmetries(cfg, dump_path);
        if (alg->parsed()) return cmd_algebra(cfg);
        if (adj->parsed()) return cmd_adjoint(cfg);
        if (opt->parsed()) {
            if (vector_text.empty() && !audit)
                throw Error("optimal requires --vector or --audit");
            return cmd_optimal(cfg, vector_text, audit);
        }
        if (inv->parsed()) return cmd_invariants(cfg, xi, tau, phi, relaxed);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
