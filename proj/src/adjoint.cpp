#include "approxsym/adjoint.hpp"

#include "approxsym/parser.hpp"

namespace approxsym {

// --- UPoly --------------------------------------------------------------------

UPoly UPoly::constant(const Rat& q) {
    UPoly p;
    if (q != 0) p.c = {q};
    return p;
}

UPoly UPoly::monomial(const Rat& q, size_t deg) {
    UPoly p;
    if (q != 0) {
        p.c.assign(deg + 1, Rat(0));
        p.c[deg] = q;
    }
    return p;
}

void UPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

UPoly UPoly::operator+(const UPoly& o) const {
    UPoly r;
    r.c.resize(std::max(c.size(), o.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.trim();
    return r;
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + o.scale(-1); }

UPoly UPoly::operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    UPoly r;
    r.c.assign(c.size() + o.c.size() - 1, Rat(0));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    r.trim();
    return r;
}

UPoly UPoly::scale(const Rat& q) const {
    if (q == 0) return {};
    UPoly r = *this;
    for (auto& v : r.c) v *= q;
    return r;
}

UPoly UPoly::derivative() const {
    UPoly r;
    for (size_t i = 1; i < c.size(); ++i) r.c.push_back(c[i] * Rat(static_cast<long>(i)));
    r.trim();
    return r;
}

Rat UPoly::eval(const Rat& mu) const {
    Rat v(0);
    for (size_t i = c.size(); i-- > 0;) v = v * mu + c[i];
    return v;
}

// --- ExpPoly -------------------------------------------------------------------

ExpPoly ExpPoly::from_upoly(UPoly p, const Rat& lambda) {
    ExpPoly e;
    e.add(lambda, p);
    return e;
}

void ExpPoly::add(const Rat& lambda, const UPoly& p) {
    if (p.is_zero()) return;
    auto it = terms.find(lambda);
    if (it == terms.end()) {
        terms.emplace(lambda, p);
    } else {
        it->second = it->second + p;
        if (it->second.is_zero()) terms.erase(it);
    }
}

ExpPoly ExpPoly::operator+(const ExpPoly& o) const {
    ExpPoly r = *this;
    for (const auto& [l, p] : o.terms) r.add(l, p);
    return r;
}

ExpPoly ExpPoly::operator*(const ExpPoly& o) const {
    ExpPoly r;
    for (const auto& [l1, p1] : terms)
        for (const auto& [l2, p2] : o.terms) r.add(l1 + l2, p1 * p2);
    return r;
}

ExpPoly ExpPoly::scale(const Rat& q) const {
    ExpPoly r;
    if (q == 0) return r;
    for (const auto& [l, p] : terms) r.terms.emplace(l, p.scale(q));
    return r;
}

ExpPoly ExpPoly::derivative() const {
    ExpPoly r;
    for (const auto& [l, p] : terms) r.add(l, p.derivative() + p.scale(l));
    return r;
}

Rat ExpPoly::at_zero() const {
    Rat v(0);
    for (const auto& [l, p] : terms) v += p.eval(0);
    return v;
}

Rat ExpPoly::taylor_coeff(size_t k) const {
    // sum over terms: e^(l mu) mu^j -> sum_j p_j l^(k-j) k!/( (k-j)! k! ) ... computed
    // directly as coefficient of mu^k in the product of the two series
    Rat out(0);
    for (const auto& [l, p] : terms) {
        for (size_t j = 0; j < p.c.size() && j <= k; ++j) {
            if (p.c[j] == 0) continue;
            // coefficient of mu^(k-j) in e^(l mu) = l^(k-j)/(k-j)!
            size_t m = k - j;
            Rat fact(1);
            for (size_t i = 2; i <= m; ++i) fact *= Rat(static_cast<long>(i));
            out += p.c[j] * rat_pow(l, static_cast<long>(m)) / fact;
        }
    }
    return out;
}

Expr ExpPoly::to_expr(const Expr& mu) const {
    Expr acc;
    for (const auto& [l, p] : terms) {
        Expr pv;
        for (size_t i = p.c.size(); i-- > 0;) pv = pv * mu + Expr(p.c[i]);
        Expr ev = l == 0 ? Expr(1) : Expr::exp(Expr(l) * mu);
        acc = acc + ev * pv;
    }
    return acc;
}

Rat ExpPoly::eval_polynomial(const Rat& mu) const {
    Rat v(0);
    for (const auto& [l, p] : terms) {
        if (l != 0) throw Error("entry has an exponential factor");
        v += p.eval(mu);
    }
    return v;
}

Rat ExpPoly::eval_exp_scale(const Rat& s) const {
    if (s <= 0) throw Error("exponential scale must be positive");
    Rat v(0);
    for (const auto& [l, p] : terms) {
        if (p.c.size() > 1) throw Error("entry is not a pure exponential");
        if (!rat_is_integer(l)) throw Error("entry has a non-integer exponent");
        v += p.eval(0) * rat_pow(s, l.get_num().get_si());
    }
    return v;
}

std::string print(const ExpPoly& e) {
    if (e.is_zero()) return "0";
    std::string s;
    for (const auto& [l, p] : e.terms) {
        for (size_t d = 0; d < p.c.size(); ++d) {
            const Rat& c = p.c[d];
            if (c == 0) continue;
            Rat a = abs(c);
            std::string piece;
            if (l != 0) piece = "e^(" + rat_str(l) + "*mu)";
            if (a != 1 || (d == 0 && l == 0)) {
                if (!piece.empty()) piece += "*";
                piece += rat_str(a);
            }
            if (d >= 1) {
                if (!piece.empty()) piece += "*";
                piece += d == 1 ? "mu" : "mu^" + std::to_string(d);
            }
            if (piece.empty()) piece = "1";
            if (s.empty())
                s = (c < 0 ? "-" : "") + piece;
            else
                s += (c < 0 ? " - " : " + ") + piece;
        }
    }
    return s;
}

// --- exact exponential ------------------------------------------------------------

RatMat ad_matrix(const LieAlgebraTable& g, size_t i) {
    const size_t n = g.dim();
    if (i >= n) throw Error("generator index out of range");
    RatMat m(n, n);
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) m.at(k, j) = g.c[i][j][k];
    return m;
}

namespace {

// minimal polynomial by the first linear dependence among I, A, A^2, ...
UPoly minimal_polynomial(const RatMat& a) {
    const size_t n = a.rows();
    std::vector<RatMat> pows{RatMat::identity(n)};
    for (;;) {
        // solve sum_i x_i A^i = A^k
        RatMat next = pows.back() * a;
        RatMat sys(n * n, pows.size());
        std::vector<Rat> rhs(n * n);
        for (size_t e = 0; e < n * n; ++e) {
            for (size_t j = 0; j < pows.size(); ++j) sys.at(e, j) = pows[j].at(e / n, e % n);
            rhs[e] = next.at(e / n, e % n);
        }
        if (auto x = sys.solve(rhs)) {
            UPoly m;
            m.c.assign(pows.size() + 1, Rat(0));
            for (size_t i = 0; i < x->size(); ++i) m.c[i] = -(*x)[i];
            m.c[pows.size()] = 1;
            return m;
        }
        pows.push_back(std::move(next));
        if (pows.size() > n + 1) throw Error("internal: minimal polynomial not found");
    }
}

std::vector<Int> divisors(const Int& v) {
    Int a = abs(v);
    std::vector<Int> ds;
    if (a == 0) return ds;
    for (Int d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            ds.push_back(d);
            ds.push_back(a / d);
        }
    }
    return ds;
}

// deflate by (x - r) if r is a root; true on success
bool deflate(UPoly& p, const Rat& r) {
    if (p.eval(r) != 0) return false;
    std::vector<Rat> q(p.c.size() - 1, Rat(0));
    Rat carry(0);
    for (size_t i = p.c.size(); i-- > 1;) {
        carry = p.c[i] + carry * r;
        q[i - 1] = carry;
    }
    p.c = std::move(q);
    p.trim();
    return true;
}

// roots with multiplicity; throws if the polynomial does not split over Q
std::map<Rat, size_t> rational_roots_all(UPoly p) {
    std::map<Rat, size_t> roots;
    while (p.degree() >= 1) {
        // integer-primitive copy for the candidate scan
        Int den_lcm = 1;
        for (const auto& q : p.c) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
        std::vector<Int> ic;
        for (const auto& q : p.c) ic.push_back(Int(q * Rat(den_lcm)));
        size_t low = 0;
        while (low < ic.size() && ic[low] == 0) ++low;
        if (low > 0 && deflate(p, Rat(0))) {
            ++roots[Rat(0)];
            continue;
        }
        bool found = false;
        for (const Int& pn : divisors(ic[low])) {
            for (const Int& qd : divisors(ic.back())) {
                for (int sign : {1, -1}) {
                    Rat cand(sign * pn, qd);
                    cand.canonicalize();
                    if (deflate(p, cand)) {
                        ++roots[cand];
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) throw Error("non-rational spectrum");
    }
    return roots;
}

// inverse of p(s) as a power series mod s^m (p(0) != 0)
UPoly series_inverse(const UPoly& p, size_t m) {
    UPoly inv = UPoly::constant(Rat(1) / p.c[0]);
    for (size_t k = 1; k < m; ++k) {
        // coefficient of s^k in p*inv must vanish
        Rat s(0);
        for (size_t j = 0; j < k; ++j) {
            Rat pc = k - j < p.c.size() ? p.c[k - j] : Rat(0);
            Rat ic = j < inv.c.size() ? inv.c[j] : Rat(0);
            s += pc * ic;
        }
        inv.c.resize(k + 1, Rat(0));
        inv.c[k] = -s / p.c[0];
    }
    inv.trim();
    return inv;
}

// substitute s = x - r into p(x): returns coefficients in s
UPoly shift_poly(const UPoly& p, const Rat& r) {
    // Horner in (s + r)
    UPoly out;
    for (size_t i = p.c.size(); i-- > 0;) {
        // out = out*(s+r) + c_i
        UPoly shifted = out * UPoly{{Rat(0), Rat(1)}} + out.scale(r);
        shifted = shifted + UPoly::constant(p.c[i]);
        out = shifted;
    }
    out.trim();
    return out;
}

RatMat poly_of_matrix(const UPoly& p, const RatMat& a) {
    const size_t n = a.rows();
    RatMat acc(n, n);
    for (size_t i = p.c.size(); i-- > 0;) {
        acc = acc * a;
        for (size_t d = 0; d < n; ++d) acc.at(d, d) += p.c[i];
    }
    return acc;
}

} // namespace

std::vector<std::vector<ExpPoly>> exact_exp(const RatMat& a, int sign) {
    if (a.rows() != a.cols()) throw Error("matrix must be square");
    const size_t n = a.rows();
    UPoly minpoly = minimal_polynomial(a);
    auto roots = rational_roots_all(minpoly);

    std::vector<std::vector<ExpPoly>> out(n, std::vector<ExpPoly>(n));
    const Rat sgn_mu(sign >= 0 ? 1 : -1);

    for (const auto& [lambda, mult] : roots) {
        // m_i(x) = minpoly/(x-lambda)^mult, inverted as a series at lambda
        UPoly mi = minpoly;
        for (size_t k = 0; k < mult; ++k) {
            bool ok = deflate(mi, lambda);
            if (!ok) throw Error("internal: root multiplicity mismatch");
        }
        UPoly mi_shifted = shift_poly(mi, lambda);
        UPoly vi = series_inverse(mi_shifted, mult);
        // projector P_i = h_i(A) with h_i(x) = v_i(x-lambda) m_i(x)
        UPoly vx;
        {
            UPoly sx{{-lambda, Rat(1)}}; // x - lambda
            UPoly acc = UPoly::constant(Rat(0));
            for (size_t i = vi.c.size(); i-- > 0;) acc = acc * sx + UPoly::constant(vi.c[i]);
            vx = acc;
        }
        RatMat proj = poly_of_matrix(vx * mi, a);

        // nilpotent part (A - lambda I) restricted to the block
        RatMat nil(n, n);
        {
            RatMat shifted = a;
            for (size_t d = 0; d < n; ++d) shifted.at(d, d) -= lambda;
            nil = shifted * proj;
        }
        // exp(sign mu A) block = e^(sign lambda mu) P_i sum_r (sign mu)^r N^r / r!
        RatMat nr = proj;
        Rat fact(1);
        for (size_t r = 0; r < mult; ++r) {
            if (r > 0) {
                nr = nr * nil;
                fact *= Rat(static_cast<long>(r));
            }
            Rat coeff = rat_pow(sgn_mu, static_cast<long>(r)) / fact;
            for (size_t row = 0; row < n; ++row)
                for (size_t col = 0; col < n; ++col) {
                    Rat v = nr.at(row, col) * coeff;
                    if (v != 0) out[row][col].add(lambda * sgn_mu, UPoly::monomial(v, r));
                }
        }
    }
    // sanity: identity at mu = 0
    for (size_t row = 0; row < n; ++row)
        for (size_t col = 0; col < n; ++col) {
            Rat v = out[row][col].at_zero();
            if (v != (row == col ? Rat(1) : Rat(0)))
                throw Error("internal: exponential is not the identity at mu = 0");
        }
    return out;
}

AdjointMatrix adjoint_matrix(const LieAlgebraTable& g, size_t i) {
    AdjointMatrix m;
    m.generator = i;
    m.entries = exact_exp(ad_matrix(g, i), -1);
    return m;
}

std::vector<Expr> apply_adjoint(const AdjointMatrix& m, const Expr& mu,
                                const std::vector<Rat>& w) {
    const size_t n = m.dim();
    if (w.size() != n) throw Error("coordinate dimension mismatch");
    std::vector<Expr> out(n);
    for (size_t k = 0; k < n; ++k) {
        Expr acc;
        for (size_t j = 0; j < n; ++j) {
            if (w[j] == 0 || m.entries[k][j].is_zero()) continue;
            acc = acc + m.entries[k][j].to_expr(mu) * Expr(w[j]);
        }
        out[k] = acc;
    }
    return out;
}

std::vector<Rat> apply_adjoint_rat(const AdjointMatrix& m, const Rat& mu,
                                   const std::vector<Rat>& w) {
    const size_t n = m.dim();
    if (w.size() != n) throw Error("coordinate dimension mismatch");
    std::vector<Rat> out(n, Rat(0));
    for (size_t k = 0; k < n; ++k)
        for (size_t j = 0; j < n; ++j)
            if (w[j] != 0 && !m.entries[k][j].is_zero())
                out[k] += m.entries[k][j].eval_polynomial(mu) * w[j];
    return out;
}

std::vector<Rat> apply_adjoint_scale(const AdjointMatrix& m, const Rat& s,
                                     const std::vector<Rat>& w) {
    const size_t n = m.dim();
    if (w.size() != n) throw Error("coordinate dimension mismatch");
    std::vector<Rat> out(n, Rat(0));
    for (size_t k = 0; k < n; ++k)
        for (size_t j = 0; j < n; ++j)
            if (w[j] != 0 && !m.entries[k][j].is_zero())
                out[k] += m.entries[k][j].eval_exp_scale(s) * w[j];
    return out;
}

// --- table emitters ---------------------------------------------------------------

namespace {

std::string entry_string(const AdjointMatrix& m, size_t j, bool latex) {
    // Ad(exp(mu v_i)) v_j rendered as a combination of basis labels
    std::string s;
    const size_t n = m.dim();
    for (size_t k = 0; k < n; ++k) {
        const ExpPoly& e = m.entries[k][j];
        if (e.is_zero()) continue;
        std::string coeff = print(e);
        std::string label = latex ? "v_{" + std::to_string(k + 1) + "}" : "v" + std::to_string(k + 1);
        std::string piece;
        if (coeff == "1")
            piece = label;
        else if (coeff == "-1")
            piece = "-" + label;
        else if (coeff.find(" + ") != std::string::npos || coeff.find(" - ") != std::string::npos)
            piece = "(" + coeff + ")*" + label;
        else
            piece = coeff + "*" + label;
        if (s.empty()) {
            s = piece;
        } else if (piece[0] == '-') {
            s += " - " + piece.substr(1);
        } else {
            s += " + " + piece;
        }
    }
    return s.empty() ? "0" : s;
}

} // namespace

std::string text_adjoint_table(const LieAlgebraTable& g) {
    const size_t n = g.dim();
    std::string out;
    for (size_t i = 0; i < n; ++i) {
        AdjointMatrix m = adjoint_matrix(g, i);
        out += "Ad(exp(mu*" + g.labels[i] + ")):\n";
        for (size_t j = 0; j < n; ++j)
            out += "  " + g.labels[j] + " -> " + entry_string(m, j, false) + "\n";
    }
    return out;
}

std::string latex_adjoint_table(const LieAlgebraTable& g) {
    const size_t n = g.dim();
    std::string out;
    // two half-tables of five columns each
    for (size_t half = 0; half < 2; ++half) {
        size_t lo = half * 5, hi = std::min(n, lo + 5);
        if (lo >= n) break;
        out += "\\begin{array}{c|";
        for (size_t j = lo; j < hi; ++j) out += "c";
        out += "}\n\\mathrm{Ad}";
        for (size_t j = lo; j < hi; ++j) out += " & \\mathbf{v}_{" + std::to_string(j + 1) + "}";
        out += " \\\\\\hline\n";
        for (size_t i = 0; i < n; ++i) {
            AdjointMatrix m = adjoint_matrix(g, i);
            out += "\\mathbf{v}_{" + std::to_string(i + 1) + "}";
            for (size_t j = lo; j < hi; ++j) out += " & " + entry_string(m, j, true);
            out += " \\\\\n";
        }
        out += "\\end{array}\n";
    }
    return out;
}

} // namespace approxsym
