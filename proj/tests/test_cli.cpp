#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>

#include "approxsym/parser.hpp"

using json = nlohmann::json;

namespace {

std::string g_cli;
std::string g_source_dir;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args, bool merge_stderr = false) {
    std::string cmd = g_cli + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.output.append(buf.data(), n);
    int status = pclose(p);
    r.exit_code = WEXITSTATUS(status);
    return r;
}

json load_schema(const std::string& name) {
    std::ifstream in(g_source_dir + "/schemas/" + name);
    REQUIRE(in.good());
    return json::parse(in);
}

// validator for the schema subset used here: type, required, properties, items
bool validate(const json& value, const json& schema, std::string* why) {
    if (schema.contains("type")) {
        const std::string t = schema["type"];
        bool ok = (t == "object" && value.is_object()) || (t == "array" && value.is_array()) ||
                  (t == "string" && value.is_string()) || (t == "boolean" && value.is_boolean()) ||
                  (t == "integer" && value.is_number_integer()) ||
                  (t == "number" && value.is_number());
        if (!ok) {
            *why = "expected type " + t + " at " + value.dump().substr(0, 60);
            return false;
        }
    }
    if (schema.contains("required"))
        for (const auto& key : schema["required"]) {
            if (!value.contains(key.get<std::string>())) {
                *why = "missing required key " + key.get<std::string>();
                return false;
            }
        }
    if (schema.contains("properties") && value.is_object())
        for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
            if (value.contains(it.key()))
                if (!validate(value[it.key()], it.value(), why)) return false;
    if (schema.contains("items") && value.is_array())
        for (const auto& item : value)
            if (!validate(item, schema["items"], why)) return false;
    return true;
}

void check_schema(const std::string& payload, const std::string& schema_name) {
    json parsed = json::parse(payload);
    json schema = load_schema(schema_name);
    std::string why;
    bool ok = validate(parsed, schema, &why);
    if (!ok) MESSAGE(why);
    CHECK(ok);
}

} // namespace

TEST_CASE("preset runs exit with the diff code") {
    CHECK(run("symmetries --preset harry-dym").exit_code == 1);
    CHECK(run("algebra --preset harry-dym").exit_code == 1);
    CHECK(run("adjoint --preset harry-dym").exit_code == 1);
    CHECK(run("invariants --preset harry-dym").exit_code == 1);
    CHECK(run("optimal --preset harry-dym --audit").exit_code == 1);
}

TEST_CASE("smoke run on a custom equation is clean") {
    auto r = run("symmetries --pde \"u_t + u*u_x\" --perturb \"u_xx\"");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("Exact symmetries") != std::string::npos);
}

TEST_CASE("errors exit with code 2") {
    auto r = run("symmetries --pde \"u_x + u\"", true);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("not an evolution equation") != std::string::npos);

    auto bad = run("symmetries --pde \"u_t + (\"", true);
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("parse error") != std::string::npos);

    auto zero = run("optimal --preset harry-dym --vector \"0,0,0,0,0,0,0,0,0,0\"", true);
    CHECK(zero.exit_code == 2);
    CHECK(zero.output.find("zero vector") != std::string::npos);

    auto empty = run("algebra --pde \"u_t + u*u_x + x*t*u\" --ansatz-deg 0", true);
    CHECK(empty.exit_code == 2);
    CHECK(empty.output.find("empty basis") != std::string::npos);

    auto catalog = run("invariants --preset harry-dym --tau \"3*t\" --phi \"-1*u\"", true);
    CHECK(catalog.exit_code == 2);
    CHECK(catalog.output.find("not in catalog") != std::string::npos);
    CHECK(catalog.output.find("verify_invariant") != std::string::npos);

    auto both = run("symmetries --preset harry-dym --pde \"u_t + u_x\"", true);
    CHECK(both.exit_code == 2);
    CHECK(both.output.find("mutually exclusive") != std::string::npos);

    auto none = run("symmetries", true);
    CHECK(none.exit_code == 2);
}

TEST_CASE("json outputs validate and are byte-stable") {
    auto sym = run("symmetries --preset harry-dym --format json");
    check_schema(sym.output, "symmetries.schema.json");
    auto sym2 = run("symmetries --preset harry-dym --format json");
    CHECK(sym.output == sym2.output);

    auto alg = run("algebra --preset harry-dym --format json");
    check_schema(alg.output, "algebra.schema.json");

    auto adj = run("adjoint --preset harry-dym --format json");
    check_schema(adj.output, "adjoint.schema.json");

    auto opt = run("optimal --preset harry-dym --vector \"1,2,0,0,0,0,0,3,0,0\" --audit --format json");
    check_schema(opt.output, "optimal.schema.json");
    CHECK(opt.output ==
          run("optimal --preset harry-dym --vector \"1,2,0,0,0,0,0,3,0,0\" --audit --format json")
              .output);

    auto inv = run("invariants --preset harry-dym --format json");
    check_schema(inv.output, "invariants.schema.json");
}

TEST_CASE("emitted expressions re-parse to identical canonical forms") {
    auto inv = run("invariants --preset harry-dym --format json");
    json rows = json::parse(inv.output);
    int checked = 0;
    for (const auto& row : rows) {
        for (const char* key : {"first", "second"}) {
            std::string text = row["printed"][key];
            approxsym::Expr e = approxsym::parse(text);
            CHECK(approxsym::parse(approxsym::print(e)) == e);
            ++checked;
        }
    }
    CHECK(checked == 28);
}

TEST_CASE("single-generator invariant lookup") {
    auto r = run("invariants --preset harry-dym --xi \"x\" --phi \"u\"");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("t, u/x") != std::string::npos);

    auto v = run("optimal --preset harry-dym --vector \"0,0,0,0,0,0,0,1,0,0\"");
    CHECK(v.exit_code == 0);
    CHECK(v.output.find("Family: v1") != std::string::npos);
}

TEST_CASE("latex formats render") {
    auto adj = run("adjoint --preset harry-dym --format latex");
    CHECK(adj.output.find("\\begin{array}") != std::string::npos);
    auto inv = run("invariants --preset harry-dym --format latex");
    CHECK(inv.output.find("\\begin{tabular}") != std::string::npos);
}

TEST_CASE("determining-system dump") {
    std::string path = "/tmp/approxsym_dump.txt";
    auto r = run("symmetries --preset harry-dym --dump-system " + path);
    CHECK(r.exit_code == 1);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line.find(" : ") != std::string::npos);
}

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: test_cli <cli-binary> <source-dir>\n");
        return 1;
    }
    g_cli = std::string("APPROXSYM_COLOR=0 ") + argv[1];
    g_source_dir = argv[2];
    doctest::Context ctx;
    return ctx.run();
}
