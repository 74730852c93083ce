#include "approxsym/invariants.hpp"

#include <random>

#include "approxsym/harry_dym.hpp"
#include "approxsym/parser.hpp"
#include "approxsym/reference.hpp"

namespace approxsym {

namespace {

const Symbol X_ = Symbol::x();
const Symbol T_ = Symbol::t();
const Symbol U_ = Symbol::u();

void require_point_expr(const Expr& e) {
    std::set<Symbol> syms;
    e.symbols(syms);
    for (const auto& s : syms)
        if (s.is_jet()) throw Error("invariants are functions of x, t, u only");
}

} // namespace

bool verify_invariant(const VectorField& X, const Expr& I) {
    require_point_expr(I);
    return X.apply(I).is_zero();
}

bool verify_invariant_relaxed(const VectorField& X, const Expr& I) {
    require_point_expr(I);
    Expr r = X.apply(I);
    try {
        auto tr = eps_truncate(r);
        return tr.order0.is_zero() && tr.order1.is_zero();
    } catch (const Error&) {
        return r.is_zero();
    }
}

namespace {

// coefficients of a polynomial of degree <= deg in `s`, or nullopt
std::optional<std::vector<Expr>> poly_coeffs_in(const Expr& e, const Symbol& s, int deg) {
    std::vector<Expr> cs;
    Expr rest = e;
    Expr ds = e;
    Rat fact(1);
    for (int k = 0; k <= deg; ++k) {
        if (k > 0) fact *= Rat(k);
        std::map<Symbol, Expr> at0{{s, Expr(0)}};
        Expr ck;
        try {
            ck = substitute(ds, at0) / Expr(fact);
        } catch (const Error&) {
            return std::nullopt; // pole at s = 0
        }
        cs.push_back(ck);
        ds = diff(ds, s);
    }
    if (!ds.is_zero()) return std::nullopt; // degree too high or not polynomial
    Expr rebuilt;
    for (int k = deg; k >= 0; --k) rebuilt = rebuilt * Expr(s) + cs[k];
    if (!is_zero(rebuilt - e)) return std::nullopt;
    return cs;
}

struct CharClass {
    Expr xi0, xi1, xi2; // xi = xi0 + xi1 x + xi2 x^2
    Expr tau;
    Expr alpha, beta; // phi = (alpha + beta x) u
};

CharClass recognize(const VectorField& X) {
    const char* outside = "characteristic system not in catalog";
    if (X.is_zero()) throw Error("zero vector field");
    if (!diff(X.tau, X_).is_zero() || !diff(X.tau, T_).is_zero() || !diff(X.tau, U_).is_zero())
        throw Error(outside);
    if (!diff(X.xi, T_).is_zero() || !diff(X.xi, U_).is_zero()) throw Error(outside);
    auto xi_cs = poly_coeffs_in(X.xi, X_, 2);
    if (!xi_cs) throw Error(outside);

    CharClass c;
    c.xi0 = (*xi_cs)[0];
    c.xi1 = (*xi_cs)[1];
    c.xi2 = (*xi_cs)[2];
    c.tau = X.tau;

    if (X.phi.is_zero()) {
        c.alpha = Expr(0);
        c.beta = Expr(0);
    } else {
        Expr q = diff(X.phi, U_);
        if (!is_zero(X.phi - q * Expr(U_))) throw Error(outside);
        if (!diff(q, T_).is_zero() || !diff(q, U_).is_zero()) throw Error(outside);
        auto q_cs = poly_coeffs_in(q, X_, 1);
        if (!q_cs) throw Error(outside);
        c.alpha = (*q_cs)[0];
        c.beta = (*q_cs)[1];
    }
    // beta != 0 only pairs with a genuinely quadratic xi
    if (!c.beta.is_zero() && c.xi2.is_zero()) throw Error(outside);
    return c;
}

struct Closed {
    Expr g; // second invariant is u/g
    Expr f; // antiderivative of 1/xi
};

// base^expo with a possibly symbolic exponent: rational exponents go through
// Expr::pow, anything else through exp(expo ln(base))
Expr quote_power(const Expr& base, const Expr& expo) {
    if (expo.is_zero()) return Expr(1);
    if (expo.is_rational()) return base.pow(expo.rational_value());
    return Expr::exp(expo * Expr::ln(base));
}

Closed integrate_catalog(const CharClass& c) {
    const Expr x(X_);
    Closed out;
    if (!c.xi2.is_zero()) {
        // xi = xi2 (x^2 + p x + q)
        Expr p = c.xi1 / c.xi2, q = c.xi0 / c.xi2;
        Expr disc = p * p - Expr(4) * q;
        auto cval = [&](const Expr& r) { return c.alpha + c.beta * r; };
        if (disc.is_zero()) {
            Expr r = -p / Expr(2);
            // c/xi = beta/(xi2 (x-r)) + c(r)/(xi2 (x-r)^2)
            out.g = Expr(1);
            if (!c.beta.is_zero()) out.g = out.g * quote_power(x - r, c.beta / c.xi2);
            Expr camp = cval(r) / c.xi2;
            if (!camp.is_zero()) out.g = out.g * Expr::exp(-camp / (x - r));
            out.f = Expr(-1) / (c.xi2 * (x - r));
            return out;
        }
        if (disc.is_rational()) {
            Rat s2;
            if (rat_root(disc.rational_value(), 2, s2)) {
                Expr s(s2);
                Expr r1 = (-p + s) / Expr(2), r2 = (-p - s) / Expr(2);
                Expr a = cval(r1) / (c.xi2 * (r1 - r2));
                Expr b = cval(r2) / (c.xi2 * (r2 - r1));
                out.g = quote_power(x - r1, a) * quote_power(x - r2, b);
                out.f = (Expr::ln(x - r1) - Expr::ln(x - r2)) / (c.xi2 * (r1 - r2));
                return out;
            }
        }
        // irreducible (or symbolic) quadratic: complete the square
        Expr shift = p / Expr(2);
        Expr acoef = q - p * p / Expr(4);
        Expr root = Expr::sqrt(acoef);
        Expr y = x + shift;
        Expr quad = y * y + acoef; // = x^2 + p x + q
        out.g = Expr(1);
        if (!c.beta.is_zero()) out.g = quote_power(quad, c.beta / (Expr(2) * c.xi2));
        Expr camp = cval(-shift); // alpha - beta p/2
        if (!camp.is_zero())
            out.g = out.g * Expr::exp(camp / (c.xi2 * root) * Expr::arctan(y / root));
        out.f = Expr::arctan(y / root) / (c.xi2 * root);
        return out;
    }
    if (!c.xi1.is_zero()) {
        Expr r = -c.xi0 / c.xi1;
        Expr expo = (c.alpha + c.beta * r) / c.xi1; // beta = 0 in this class
        out.g = quote_power(x - r, expo);
        out.f = Expr::ln(x - r) / c.xi1;
        return out;
    }
    // xi constant nonzero
    out.g = Expr::exp(c.alpha * x / c.xi0);
    out.f = x / c.xi0;
    return out;
}

} // namespace

InvariantPair characteristic_invariants(const VectorField& X) {
    CharClass c = recognize(X);
    InvariantPair out;

    if (c.xi0.is_zero() && c.xi1.is_zero() && c.xi2.is_zero()) {
        if (c.tau.is_zero()) {
            // pure u-scaling: x and t are the invariants
            out.first = Expr(X_);
            out.second = Expr(T_);
        } else {
            out.first = Expr(X_);
            Expr camp = c.alpha; // beta = 0 here
            out.second = camp.is_zero()
                             ? Expr(U_)
                             : Expr(U_) * Expr::exp(-camp * Expr(T_) / c.tau);
        }
    } else {
        Closed cl = integrate_catalog(c);
        out.second = Expr(U_) / cl.g;
        out.first = c.tau.is_zero() ? Expr(T_) : Expr(T_) - c.tau * cl.f;
    }

    if (!verify_invariant(X, out.first) || !verify_invariant(X, out.second))
        throw Error("internal: catalog produced a non-invariant");
    return out;
}

bool functionally_independent(const InvariantPair& pair, unsigned seed, int points) {
    const Symbol coords[3] = {X_, T_, U_};
    Expr j[2][3];
    for (int col = 0; col < 3; ++col) {
        j[0][col] = diff(pair.first, coords[col]);
        j[1][col] = diff(pair.second, coords[col]);
    }
    Expr minors[3] = {j[0][0] * j[1][1] - j[0][1] * j[1][0],
                      j[0][0] * j[1][2] - j[0][2] * j[1][0],
                      j[0][1] * j[1][2] - j[0][2] * j[1][1]};

    std::set<Symbol> syms;
    for (const auto& m : minors) m.symbols(syms);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num_d(1, 9);
    std::uniform_int_distribution<int> den_d(1, 3);
    int good = 0;
    for (int attempt = 0; attempt < 40 * points && good < points; ++attempt) {
        std::map<Symbol, Expr> bind;
        for (const auto& s : syms) bind.emplace(s, Expr(rat(num_d(rng), den_d(rng))));
        bool rank2 = false;
        bool singular = false;
        for (const auto& m : minors) {
            Expr v;
            try {
                v = substitute(m, bind);
            } catch (const Error&) {
                singular = true;
                break;
            }
            if (v.is_rational() ? v.rational_value() != 0 : numeric_nonzero(v)) {
                rank2 = true;
                break;
            }
        }
        if (singular) continue; // resample away from singular loci
        if (!rank2) return false;
        ++good;
    }
    return good == points;
}

std::vector<InvariantRow> published_invariant_table() {
    std::vector<InvariantRow> rows;
    auto basis = harry_dym_approximate_basis();
    for (const auto& pub : reference::published_invariant_rows()) {
        InvariantRow row;
        row.label = pub.op_label;
        VectorField g{Expr(0), Expr(0), Expr(0)};
        for (const auto& [idx, coeff] : pub.coords) g = g + basis[idx].scale(parse(coeff));
        row.generator = g;
        row.printed_first = parse(pub.inv1);
        row.printed_second = parse(pub.inv2);
        row.printed_first_ok = verify_invariant(g, row.printed_first);
        row.printed_second_ok = verify_invariant(g, row.printed_second);
        try {
            InvariantPair derived = characteristic_invariants(g);
            row.catalog_applicable = true;
            row.derived = derived;
            row.derived_ok = functionally_independent(derived);
        } catch (const Error&) {
            row.catalog_applicable = false;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

const char* mark(bool ok) { return ok ? "pass" : "FAIL"; }

} // namespace

std::string text_invariant_table(const std::vector<InvariantRow>& rows) {
    std::string out;
    for (const auto& r : rows) {
        out += r.label + "\n";
        out += "  printed: " + print(r.printed_first) + " [" + mark(r.printed_first_ok) + "], " +
               print(r.printed_second) + " [" + mark(r.printed_second_ok) + "]\n";
        if (r.catalog_applicable && r.derived) {
            out += "  derived: " + print(r.derived->first) + ", " + print(r.derived->second) +
                   " [" + mark(r.derived_ok) + "]\n";
        } else {
            out += "  derived: (outside the characteristic catalog; verifier only)\n";
        }
    }
    return out;
}

std::string latex_invariant_table(const std::vector<InvariantRow>& rows) {
    std::string out = "\\begin{tabular}{lcl|c}\n";
    out += "Operator && Invariants & Status \\\\\\hline\n";
    for (const auto& r : rows) {
        out += r.label + " && $" + print(r.printed_first) + ",\\; " + print(r.printed_second) +
               "$ & " + (r.printed_first_ok && r.printed_second_ok ? "pass" : "FAIL") + " \\\\\n";
    }
    out += "\\end{tabular}\n";
    return out;
}

} // namespace approxsym
