#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "approxsym/harry_dym.hpp"
#include "approxsym/invariants.hpp"
#include "approxsym/parser.hpp"
#include "test_support.hpp"

using namespace approxsym;

namespace {

VectorField field(const char* xi, const char* tau, const char* phi) {
    return {parse(xi), parse(tau), parse(phi)};
}

} // namespace

TEST_CASE("verifier on published fixtures") {
    // v4 = 3t d/dt - u d/du annihilates u t^(1/3)
    CHECK(verify_invariant(field("0", "3*t", "-1*u"), parse("u*t^1/3")));
    // v7 + a v8 annihilates u/x
    VectorField v78 = field("a*eps*x", "eps", "a*eps*u");
    CHECK(verify_invariant(v78, parse("u/x")));
    CHECK(verify_invariant(v78, parse("(ln(x) - a*t)/a")));
    // the arctan row verifies only with the corrected quadratic generator
    VectorField last = field("a + x^2 + c*eps", "b + d*eps", "2*x*u");
    CHECK(verify_invariant(last, parse("u/(x^2 + c*eps + a)")));
    VectorField last_printed_v5 = field("a + 2*x^2 + c*eps", "b + d*eps", "x*u");
    CHECK(!verify_invariant(last_printed_v5, parse("u/(x^2 + c*eps + a)")));

    CHECK(!verify_invariant(field("1", "0", "0"), parse("x")));
    CHECK_THROWS_AS(verify_invariant(field("1", "0", "0"), parse("u_x")), Error);
}

TEST_CASE("relaxed mode truncates at eps^2") {
    // X(I) = eps^2 * x vanishes modulo eps^2 but not exactly
    VectorField X = field("eps^2", "0", "0");
    CHECK(!verify_invariant(X, parse("x")));
    CHECK(verify_invariant_relaxed(X, parse("x")));
    // residuals with eps in a denominator fall back to the exact check
    VectorField v28 = field("a*eps*x", "1", "a*eps*u");
    CHECK(verify_invariant_relaxed(v28, parse("-1*ln(x)/(a*eps) + t")));
}

TEST_CASE("characteristic catalog") {
    SUBCASE("scaling field") {
        auto pair = characteristic_invariants(field("x", "0", "u"));
        CHECK(pair.first == parse("t"));
        CHECK(pair.second == parse("u/x"));
    }
    SUBCASE("published worked example") {
        auto pair = characteristic_invariants(field("a*eps*x", "eps", "a*eps*u"));
        CHECK(verify_invariant(field("a*eps*x", "eps", "a*eps*u"), pair.first));
        CHECK(verify_invariant(field("a*eps*x", "eps", "a*eps*u"), pair.second));
        // equivalent to the published (u/x, (ln x - a t)/a) pair
        CHECK(is_zero(pair.second - parse("u/x")));
        CHECK(functionally_independent(pair));
    }
    SUBCASE("shifted linear coefficient") {
        VectorField g = field("-1*eps + a*eps*x", "1", "a*eps*u");
        auto pair = characteristic_invariants(g);
        CHECK(verify_invariant(g, pair.first));
        CHECK(verify_invariant(g, pair.second));
        CHECK(functionally_independent(pair));
    }
    SUBCASE("double root") {
        auto pair = characteristic_invariants(field("x^2", "0", "2*x*u"));
        CHECK(pair.second == parse("u/x^2"));
    }
    SUBCASE("double root away from the origin") {
        VectorField g = field("x^2 - 2*x + 1", "5", "3*u - 3*x*u");
        auto pair = characteristic_invariants(g);
        CHECK(verify_invariant(g, pair.first));
        CHECK(verify_invariant(g, pair.second));
        CHECK(functionally_independent(pair));
    }
    SUBCASE("distinct rational roots") {
        VectorField g = field("x^2 - 1", "2", "u + 3*x*u");
        auto pair = characteristic_invariants(g);
        CHECK(verify_invariant(g, pair.first));
        CHECK(verify_invariant(g, pair.second));
        CHECK(functionally_independent(pair));
    }
    SUBCASE("irreducible quadratic with symbolic constant") {
        VectorField g = field("a + x^2 + c*eps", "b + d*eps", "2*x*u");
        auto pair = characteristic_invariants(g);
        CHECK(verify_invariant(g, pair.first));
        CHECK(verify_invariant(g, pair.second));
        CHECK(is_zero(pair.second - parse("u/(x^2 + c*eps + a)")));
        CHECK(functionally_independent(pair));
    }
    SUBCASE("pure time translation") {
        auto pair = characteristic_invariants(field("0", "1", "0"));
        CHECK(pair.first == parse("x"));
        CHECK(pair.second == parse("u"));
    }
    SUBCASE("u-scaling with time flow") {
        VectorField g = field("0", "2", "3*u");
        auto pair = characteristic_invariants(g);
        CHECK(verify_invariant(g, pair.first));
        CHECK(verify_invariant(g, pair.second));
        CHECK(functionally_independent(pair));
    }
    SUBCASE("out-of-catalog generators are refused") {
        CHECK_THROWS_WITH(characteristic_invariants(field("0", "3*t", "-1*u")),
                          "characteristic system not in catalog");
        CHECK_THROWS_WITH(characteristic_invariants(field("x^3", "0", "0")),
                          "characteristic system not in catalog");
        CHECK_THROWS_WITH(characteristic_invariants(field("u", "0", "0")),
                          "characteristic system not in catalog");
        CHECK_THROWS_WITH(characteristic_invariants(field("x", "0", "x*u")),
                          "characteristic system not in catalog"); // beta without quadratic xi
    }
}

TEST_CASE("published fourteen-row table") {
    auto rows = published_invariant_table();
    REQUIRE(rows.size() == 14);

    int printed_failures = 0;
    for (const auto& r : rows) {
        if (!r.printed_first_ok || !r.printed_second_ok) {
            ++printed_failures;
            CHECK(r.label == "v1 + a*v2 + b*v7");
            CHECK(!r.printed_first_ok); // the garbled first invariant
            CHECK(r.printed_second_ok);
        }
    }
    CHECK(printed_failures == 1);

    for (const auto& r : rows) {
        if (!r.catalog_applicable) {
            CHECK(r.label == "v4"); // tau = 3t is outside the recognized class
            continue;
        }
        REQUIRE(r.derived.has_value());
        CHECK(r.derived_ok);
        CHECK(verify_invariant(r.generator, r.derived->first));
        CHECK(verify_invariant(r.generator, r.derived->second));
    }

    // the garbled row's catalog replacement
    for (const auto& r : rows)
        if (r.label == "v1 + a*v2 + b*v7")
            CHECK(is_zero(r.derived->first - parse("t - (a + b*eps)*x")));
}

TEST_CASE("invariance under generator rescaling") {
    testing::Gen g(0);
    VectorField base = field("a*eps*x", "eps", "a*eps*u");
    Expr inv = parse("u/x");
    for (int i = 0; i < 10; ++i) {
        Rat q = g.nonzero_rat();
        CHECK(verify_invariant(base.scale(Expr(q)), inv));
    }
}

TEST_CASE("table emitters") {
    auto rows = published_invariant_table();
    std::string text = text_invariant_table(rows);
    CHECK(text.find("[pass]") != std::string::npos);
    CHECK(text.find("[FAIL]") != std::string::npos);
    std::string latex = latex_invariant_table(rows);
    CHECK(latex.find("\\begin{tabular}") != std::string::npos);
}
