#include "approxsym/jet.hpp"

namespace approxsym {

int jet_order_of(const Expr& e) {
    std::set<Symbol> syms;
    e.symbols(syms);
    int order = 0;
    for (const auto& s : syms)
        if (s.is_jet()) order = std::max(order, s.jet_order());
    return order;
}

Expr total_derivative(const Expr& e, Direction dir, int max_order) {
    const bool dx = dir == Direction::X;
    Expr result = diff(e, dx ? Symbol::x() : Symbol::t());

    std::set<Symbol> syms;
    e.symbols(syms);
    for (const auto& s : syms) {
        int nx, nt;
        if (s.kind() == SymbolKind::Dependent) {
            nx = 0;
            nt = 0;
        } else if (s.is_jet()) {
            nx = s.jet_x();
            nt = s.jet_t();
        } else {
            continue;
        }
        Expr df = diff(e, s);
        if (df.is_zero()) continue;
        int mx = nx + (dx ? 1 : 0), mt = nt + (dx ? 0 : 1);
        if (mx + mt > max_order) throw Error("jet overflow");
        result = result + Expr(Symbol::jet(mx, mt)) * df;
    }
    return result;
}

ProlongedField prolong(const VectorField& X, int k) {
    if (k < 1) throw Error("prolongation order must be at least 1");
    if (!X.is_point_field()) throw Error("vector field coefficients contain jet coordinates");

    ProlongedField out;
    out.base = X;
    out.order = k;

    const Expr ux(Symbol::jet(1, 0)), ut(Symbol::jet(0, 1));
    const Expr q = X.phi - X.xi * ux - X.tau * ut;

    // D_J(q) computed incrementally: first along x, then along t
    std::map<std::pair<int, int>, Expr> dq;
    dq[{0, 0}] = q;
    for (int nx = 1; nx <= k; ++nx)
        dq[{nx, 0}] = total_derivative(dq[{nx - 1, 0}], Direction::X, k + 1);
    for (int nx = 0; nx <= k; ++nx)
        for (int nt = 1; nx + nt <= k; ++nt)
            dq[{nx, nt}] = total_derivative(dq[{nx, nt - 1}], Direction::T, k + 1);

    for (int nx = 0; nx <= k; ++nx)
        for (int nt = 0; nx + nt <= k; ++nt) {
            if (nx + nt == 0) continue;
            out.coeffs[{nx, nt}] = dq[{nx, nt}] + X.xi * Expr(Symbol::jet(nx + 1, nt)) +
                                   X.tau * Expr(Symbol::jet(nx, nt + 1));
        }
    return out;
}

Expr apply_prolonged(const ProlongedField& PX, const Expr& F) {
    if (jet_order_of(F) > PX.order) throw Error("jet order of target exceeds prolongation order");
    Expr acc = PX.base.apply(F);
    for (const auto& [J, coeff] : PX.coeffs) {
        Expr dF = diff(F, Symbol::jet(J.first, J.second));
        if (!dF.is_zero()) acc = acc + coeff * dF;
    }
    return acc;
}

} // namespace approxsym
