#include "approxsym/harry_dym.hpp"

#include "approxsym/parser.hpp"

namespace approxsym {

PerturbedPDE harry_dym() { return make_pde(parse("u_t + 1/2*u^3*u_xxx"), parse("u_x")); }

std::vector<VectorField> harry_dym_exact_basis() {
    auto f = [](const char* xi, const char* tau, const char* phi) {
        return VectorField{parse(xi), parse(tau), parse(phi)};
    };
    return {
        f("1", "0", "0"),
        f("0", "1", "0"),
        f("x", "0", "u"),
        f("0", "3*t", "-1*u"),
        f("x^2", "0", "2*x*u"),
    };
}

std::vector<VectorField> harry_dym_approximate_basis() {
    std::vector<VectorField> basis = harry_dym_exact_basis();
    const Expr eps(Symbol::eps());
    for (size_t i = 0; i < 5; ++i) basis.push_back(basis[i].scale(eps));
    return basis;
}

std::string basis_label(size_t index) { return "v" + std::to_string(index + 1); }

std::string print_in_basis(const std::vector<Rat>& coords) {
    std::string s;
    for (size_t i = 0; i < coords.size(); ++i) {
        const Rat& c = coords[i];
        if (c == 0) continue;
        if (s.empty()) {
            if (c == 1)
                s = basis_label(i);
            else if (c == -1)
                s = "-" + basis_label(i);
            else
                s = rat_str(c) + "*" + basis_label(i);
        } else {
            s += c > 0 ? " + " : " - ";
            Rat ac = abs(c);
            s += ac == 1 ? basis_label(i) : rat_str(ac) + "*" + basis_label(i);
        }
    }
    return s.empty() ? "0" : s;
}

} // namespace approxsym
