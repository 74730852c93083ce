#include "approxsym/vector_field.hpp"

#include "approxsym/parser.hpp"

namespace approxsym {

Expr VectorField::apply(const Expr& f) const {
    return xi * diff(f, Symbol::x()) + tau * diff(f, Symbol::t()) + phi * diff(f, Symbol::u());
}

bool VectorField::is_point_field() const {
    std::set<Symbol> syms;
    xi.symbols(syms);
    tau.symbols(syms);
    phi.symbols(syms);
    for (const auto& s : syms)
        if (s.is_jet()) return false;
    return true;
}

std::pair<VectorField, VectorField> VectorField::eps_split() const {
    auto a = eps_truncate(xi);
    auto b = eps_truncate(tau);
    auto c = eps_truncate(phi);
    return {VectorField{a.order0, b.order0, c.order0}, VectorField{a.order1, b.order1, c.order1}};
}

namespace {

Expr truncate_back(const Expr& e) {
    auto tr = eps_truncate(e);
    return tr.order0 + Expr(Symbol::eps()) * tr.order1;
}

} // namespace

VectorField commutator_exact(const VectorField& X, const VectorField& Y) {
    return {X.apply(Y.xi) - Y.apply(X.xi), X.apply(Y.tau) - Y.apply(X.tau),
            X.apply(Y.phi) - Y.apply(X.phi)};
}

VectorField commutator(const VectorField& X, const VectorField& Y) {
    VectorField b = commutator_exact(X, Y);
    return {truncate_back(b.xi), truncate_back(b.tau), truncate_back(b.phi)};
}

std::string print(const VectorField& X) {
    if (X.is_zero()) return "0";
    std::string s;
    auto piece = [&s](const Expr& c, const char* dir) {
        if (c.is_zero()) return;
        std::string part;
        if (c == Expr(1)) {
            part = dir;
        } else {
            std::string cs = print(c);
            bool paren = c.num().terms.size() > 1 && c.den().is_constant();
            part = (paren ? "(" + cs + ")" : cs) + "*" + dir;
        }
        if (s.empty())
            s = part;
        else if (part[0] == '-')
            s += " - " + part.substr(1);
        else
            s += " + " + part;
    };
    piece(X.xi, "d/dx");
    piece(X.tau, "d/dt");
    piece(X.phi, "d/du");
    return s;
}

} // namespace approxsym
