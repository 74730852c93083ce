#include "approxsym/expr.hpp"

#include <algorithm>
#include <random>

namespace approxsym {

// --- Base ------------------------------------------------------------------

Base Base::sym(const Symbol& s) {
    Base b;
    b.tag_ = Tag::Sym;
    b.sym_ = s;
    return b;
}

Base Base::kernel(KernelKind k, Expr arg) {
    Base b;
    b.tag_ = Tag::Kernel;
    b.kfun_ = k;
    b.sub_ = std::make_shared<const Expr>(std::move(arg));
    return b;
}

Base Base::quote(Expr payload) {
    Base b;
    b.tag_ = Tag::Quote;
    b.sub_ = std::make_shared<const Expr>(std::move(payload));
    return b;
}

int Base::compare(const Base& o) const {
    if (tag_ != o.tag_) return static_cast<int>(tag_) < static_cast<int>(o.tag_) ? -1 : 1;
    switch (tag_) {
        case Tag::Sym: {
            auto c = sym_ <=> o.sym_;
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
        case Tag::Kernel:
            if (kfun_ != o.kfun_)
                return static_cast<int>(kfun_) < static_cast<int>(o.kfun_) ? -1 : 1;
            return sub_->compare(*o.sub_);
        case Tag::Quote:
            return sub_->compare(*o.sub_);
    }
    return 0;
}

// --- Monomial ----------------------------------------------------------------

int Monomial::compare(const Monomial& o) const {
    // lexicographic from the highest base downward; larger exponent wins
    auto it = factors.rbegin();
    auto jt = o.factors.rbegin();
    while (it != factors.rend() || jt != o.factors.rend()) {
        if (it == factors.rend()) return -1;
        if (jt == o.factors.rend()) return 1;
        int bc = it->base.compare(jt->base);
        if (bc > 0) return 1;
        if (bc < 0) return -1;
        if (it->exp != jt->exp) return it->exp > jt->exp ? 1 : -1;
        ++it;
        ++jt;
    }
    return 0;
}

const Rat* Monomial::exponent_of(const Base& b) const {
    for (const auto& f : factors)
        if (f.base == b) return &f.exp;
    return nullptr;
}

// --- Poly --------------------------------------------------------------------

Poly Poly::constant(const Rat& q) {
    Poly p;
    if (q != 0) p.terms.emplace(Monomial{}, q);
    return p;
}

Poly Poly::single(Monomial m, const Rat& c) {
    Poly p;
    if (c != 0) p.terms.emplace(std::move(m), c);
    return p;
}

bool Poly::is_constant() const {
    if (terms.empty()) return true;
    return terms.size() == 1 && terms.begin()->first.empty();
}

Rat Poly::constant_value() const {
    if (terms.empty()) return Rat(0);
    if (!is_constant()) throw Error("polynomial is not constant");
    return terms.begin()->second;
}

void Poly::add_term(Monomial m, Rat c) {
    if (c == 0) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(std::move(m), std::move(c));
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    // accumulate into the larger operand
    if (terms.size() < o.terms.size()) return o + *this;
    Poly r = *this;
    for (const auto& [m, c] : o.terms) r.add_term(m, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.terms) r.add_term(m, -c);
    return r;
}

Poly Poly::negate() const {
    Poly r;
    for (const auto& [m, c] : terms) r.terms.emplace(m, -c);
    return r;
}

Poly Poly::scale(const Rat& q) const {
    if (q == 0) return Poly::zero();
    Poly r;
    for (const auto& [m, c] : terms) r.terms.emplace(m, c * q);
    return r;
}

bool Poly::operator==(const Poly& o) const { return compare(o) == 0; }

int Poly::compare(const Poly& o) const {
    auto it = terms.begin(), jt = o.terms.begin();
    while (it != terms.end() || jt != o.terms.end()) {
        if (it == terms.end()) return -1;
        if (jt == o.terms.end()) return 1;
        int mc = it->first.compare(jt->first);
        if (mc != 0) return mc;
        if (it->second != jt->second) return it->second > jt->second ? 1 : -1;
        ++it;
        ++jt;
    }
    return 0;
}

const Rat& Poly::leading_coeff() const {
    if (terms.empty()) throw Error("leading coefficient of zero polynomial");
    return terms.rbegin()->second;
}

void Poly::content_primitive(Rat& content, Poly& primitive) const {
    if (terms.empty()) {
        content = 0;
        primitive = Poly::zero();
        return;
    }
    Int num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : terms) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    content = Rat(num_gcd, den_lcm);
    content.canonicalize();
    if (sgn(leading_coeff()) < 0) content = -content;
    primitive = scale(Rat(1) / content);
}

std::map<Rat, Poly> Poly::collect_by(const Base& b) const {
    std::map<Rat, Poly> out;
    for (const auto& [m, c] : terms) {
        Rat e(0);
        Monomial rest;
        for (const auto& f : m.factors) {
            if (f.base == b)
                e = f.exp;
            else
                rest.factors.push_back(f);
        }
        out[e].add_term(std::move(rest), c);
    }
    return out;
}

void Poly::bases(std::set<Base>& out) const {
    for (const auto& [m, c] : terms)
        for (const auto& f : m.factors) out.insert(f.base);
}

// --- raw (formal) monomial/poly products for division and gcd ----------------
// Inside gcd and exact division every base is an opaque variable; no
// kernel/quote rewriting may fire there.

namespace {

Monomial mono_mul_raw(const Monomial& a, const Monomial& b) {
    Monomial r;
    auto it = a.factors.begin(), jt = b.factors.begin();
    while (it != a.factors.end() || jt != b.factors.end()) {
        if (jt == b.factors.end()) {
            r.factors.push_back(*it++);
        } else if (it == a.factors.end()) {
            r.factors.push_back(*jt++);
        } else {
            int bc = it->base.compare(jt->base);
            if (bc < 0) {
                r.factors.push_back(*it++);
            } else if (bc > 0) {
                r.factors.push_back(*jt++);
            } else {
                Rat e = it->exp + jt->exp;
                if (e != 0) r.factors.push_back(Factor{it->base, e});
                ++it;
                ++jt;
            }
        }
    }
    return r;
}

// a / b if every exponent of b is present in a with at least that exponent
bool mono_divide_raw(const Monomial& a, const Monomial& b, Monomial& q) {
    q.factors.clear();
    auto it = a.factors.begin();
    for (const auto& f : b.factors) {
        while (it != a.factors.end() && it->base.compare(f.base) < 0) q.factors.push_back(*it++);
        if (it == a.factors.end() || !(it->base == f.base) || it->exp < f.exp) return false;
        Rat e = it->exp - f.exp;
        if (e != 0) q.factors.push_back(Factor{it->base, e});
        ++it;
    }
    while (it != a.factors.end()) q.factors.push_back(*it++);
    return true;
}

Poly poly_mul_raw(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) r.add_term(mono_mul_raw(ma, mb), ca * cb);
    return r;
}

} // namespace

bool poly_divide_exact(const Poly& num, const Poly& den, Poly& quot) {
    if (den.is_zero()) throw Error("division by zero polynomial");
    quot = Poly::zero();
    Poly rem = num;
    const auto& dl = *den.terms.rbegin();
    while (!rem.is_zero()) {
        const auto& rl = *rem.terms.rbegin();
        Monomial q;
        if (!mono_divide_raw(rl.first, dl.first, q)) return false;
        Rat c = rl.second / dl.second;
        Poly qt = Poly::single(q, c);
        quot = quot + qt;
        rem = rem - poly_mul_raw(qt, den);
    }
    return true;
}

// --- multivariate gcd (primitive PRS) ----------------------------------------

namespace {

using UniView = std::map<long, Poly>; // exponent of the main base -> coefficient

long as_long_exp(const Rat& e) {
    if (!rat_is_integer(e)) throw Error("internal: fractional exponent in gcd");
    if (!e.get_num().fits_slong_p()) throw Error("exponent too large");
    return e.get_num().get_si();
}

UniView uni_view(const Poly& p, const Base& main) {
    UniView v;
    for (const auto& [m, c] : p.terms) {
        long e = 0;
        Monomial rest;
        for (const auto& f : m.factors) {
            if (f.base == main)
                e = as_long_exp(f.exp);
            else
                rest.factors.push_back(f);
        }
        v[e].add_term(std::move(rest), c);
        if (v[e].is_zero()) v.erase(e);
    }
    return v;
}

Poly attach_main(const Base& main, long deg, const Poly& coeff) {
    if (deg == 0) return coeff;
    Poly r;
    for (const auto& [m, c] : coeff.terms) {
        Monomial mm;
        bool placed = false;
        for (const auto& f : m.factors) {
            if (!placed && main.compare(f.base) < 0) {
                mm.factors.push_back(Factor{main, Rat(deg)});
                placed = true;
            }
            mm.factors.push_back(f);
        }
        if (!placed) mm.factors.push_back(Factor{main, Rat(deg)});
        r.add_term(std::move(mm), c);
    }
    return r;
}

Poly from_view(const Base& main, const UniView& v) {
    Poly r;
    for (const auto& [d, coeff] : v) r = r + attach_main(main, d, coeff);
    return r;
}

Poly gcd_int(const Poly& a, const Poly& b);

Poly view_content(const UniView& v) {
    Poly g = Poly::zero();
    for (const auto& [d, coeff] : v) {
        g = gcd_int(g, coeff);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

UniView view_divide(const UniView& v, const Poly& d) {
    UniView r;
    for (const auto& [deg, coeff] : v) {
        Poly q;
        if (!poly_divide_exact(coeff, d, q)) throw Error("internal: inexact content division");
        if (!q.is_zero()) r[deg] = q;
    }
    return r;
}

long view_deg(const UniView& v) { return v.empty() ? -1 : v.rbegin()->first; }

UniView view_sub(const UniView& a, const UniView& b) {
    UniView r = a;
    for (const auto& [d, c] : b) {
        auto it = r.find(d);
        if (it == r.end()) {
            r[d] = c.negate();
        } else {
            it->second = it->second - c;
            if (it->second.is_zero()) r.erase(it);
        }
    }
    return r;
}

UniView view_mul_coeff(const UniView& a, const Poly& c, long shift) {
    UniView r;
    for (const auto& [d, p] : a) {
        Poly q = poly_mul_raw(p, c);
        if (!q.is_zero()) r[d + shift] = q;
    }
    return r;
}

// pseudo-remainder of a by b in the main variable
UniView pseudo_rem(UniView a, const UniView& b) {
    long db = view_deg(b);
    const Poly& lb = b.rbegin()->second;
    while (view_deg(a) >= db) {
        long da = view_deg(a);
        Poly la = a.rbegin()->second;
        a = view_sub(view_mul_coeff(a, lb, 0), view_mul_coeff(b, la, da - db));
    }
    return a;
}

Poly primitive_scaled(const Poly& p) {
    Rat c;
    Poly prim;
    p.content_primitive(c, prim);
    return prim;
}

Poly gcd_int(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero() ? Poly::zero() : primitive_scaled(b);
    if (b.is_zero()) return primitive_scaled(a);
    Poly pa = primitive_scaled(a), pb = primitive_scaled(b);
    if (pa == pb) return pa;
    if (pa.is_constant() || pb.is_constant()) return Poly::constant(1);

    std::set<Base> bs;
    pa.bases(bs);
    pb.bases(bs);
    const Base main = *bs.rbegin();

    UniView va = uni_view(pa, main), vb = uni_view(pb, main);
    Poly ca = view_content(va), cb = view_content(vb);
    va = view_divide(va, ca);
    vb = view_divide(vb, cb);
    Poly c = gcd_int(ca, cb);

    if (view_deg(va) < view_deg(vb)) std::swap(va, vb);
    while (!vb.empty()) {
        UniView r = pseudo_rem(va, vb);
        va = std::move(vb);
        if (r.empty()) {
            vb.clear();
        } else {
            Poly rc = view_content(r);
            vb = view_divide(r, rc);
            // keep coefficients integer-primitive as well
            Poly whole = from_view(main, vb);
            vb = uni_view(primitive_scaled(whole), main);
        }
    }
    if (view_deg(va) == 0) return primitive_scaled(c);
    Poly g = from_view(main, va);
    return primitive_scaled(poly_mul_raw(c, g));
}

// per-base exponent-denominator lcm so fractional exponents become integers
std::map<Base, Int> exponent_scale(const Poly& a, const Poly& b) {
    std::map<Base, Int> l;
    auto scan = [&](const Poly& p) {
        for (const auto& [m, c] : p.terms)
            for (const auto& f : m.factors) {
                auto [it, fresh] = l.emplace(f.base, 1);
                mpz_lcm(it->second.get_mpz_t(), it->second.get_mpz_t(),
                        f.exp.get_den().get_mpz_t());
            }
    };
    scan(a);
    scan(b);
    return l;
}

bool scale_is_trivial(const std::map<Base, Int>& l) {
    for (const auto& [b, v] : l)
        if (v != 1) return false;
    return true;
}

Poly apply_scale(const Poly& p, const std::map<Base, Int>& l, bool invert) {
    Poly r;
    for (const auto& [m, c] : p.terms) {
        Monomial mm;
        mm.factors.reserve(m.factors.size());
        for (const auto& f : m.factors) {
            Rat s(l.at(f.base));
            Rat e = invert ? Rat(f.exp / s) : Rat(f.exp * s);
            mm.factors.push_back(Factor{f.base, e});
        }
        r.terms.emplace(std::move(mm), c);
    }
    return r;
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    auto l = exponent_scale(a, b);
    if (scale_is_trivial(l)) return gcd_int(a, b);
    Poly g = gcd_int(apply_scale(a, l, false), apply_scale(b, l, false));
    return apply_scale(g, l, true);
}

// --- monomial product with rewriting ------------------------------------------

namespace {

struct MonoProduct {
    Rat coeff{1};
    Monomial mono;
    std::vector<std::pair<Expr, long>> expansions;
    bool plain() const { return expansions.empty(); }
};

// Applies the canonical factor rules to a merged base->exponent map:
// exp kernels fold exponents into their arguments and coalesce; quoted
// compounds keep only the fractional part of their exponent.
MonoProduct build_monomial(const std::map<Base, Rat>& merged) {
    MonoProduct out;
    Expr exp_arg;
    bool have_exp = false;
    for (const auto& [base, e] : merged) {
        if (e == 0) continue;
        if (e < 0) throw Error("internal: negative exponent in polynomial context");
        switch (base.tag()) {
            case Base::Tag::Sym:
                out.mono.factors.push_back(Factor{base, e});
                break;
            case Base::Tag::Kernel:
                if (base.kernel_kind() == KernelKind::Exp) {
                    exp_arg = exp_arg + base.sub() * Expr(e);
                    have_exp = true;
                } else {
                    out.mono.factors.push_back(Factor{base, e});
                }
                break;
            case Base::Tag::Quote: {
                Int n = e.get_num() / e.get_den(); // e > 0, truncation = floor
                Rat frac = e - Rat(n);
                if (n != 0) {
                    if (!n.fits_slong_p()) throw Error("exponent too large");
                    out.expansions.emplace_back(base.sub(), n.get_si());
                }
                if (frac != 0) out.mono.factors.push_back(Factor{base, frac});
                break;
            }
        }
    }
    if (have_exp && !exp_arg.is_zero()) {
        Base eb = Base::kernel(KernelKind::Exp, exp_arg);
        auto pos = std::lower_bound(out.mono.factors.begin(), out.mono.factors.end(), eb,
                                    [](const Factor& f, const Base& b) { return f.base < b; });
        out.mono.factors.insert(pos, Factor{eb, Rat(1)});
    }
    return out;
}

std::map<Base, Rat> merge_factor_maps(const Monomial& a, const Monomial& b) {
    std::map<Base, Rat> m;
    for (const auto& f : a.factors) m[f.base] += f.exp;
    for (const auto& f : b.factors) m[f.base] += f.exp;
    return m;
}

Expr poly_to_expr(Poly p) { return Expr::from_parts(std::move(p), Poly::constant(1)); }

bool all_sym_factors(const Monomial& m) {
    for (const auto& f : m.factors)
        if (f.base.tag() != Base::Tag::Sym) return false;
    return true;
}

// polynomial product at the expression level; triggers quote expansion
Expr poly_mul_expr(const Poly& a, const Poly& b) {
    Poly direct;
    std::vector<Expr> fixups;
    for (const auto& [ma, ca] : a.terms) {
        const bool sa = all_sym_factors(ma);
        for (const auto& [mb, cb] : b.terms) {
            if (sa && all_sym_factors(mb)) {
                direct.add_term(mono_mul_raw(ma, mb), ca * cb);
                continue;
            }
            MonoProduct mp = build_monomial(merge_factor_maps(ma, mb));
            Rat c = ca * cb * mp.coeff;
            if (mp.plain()) {
                direct.add_term(std::move(mp.mono), c);
            } else {
                Expr piece = poly_to_expr(Poly::single(mp.mono, c));
                for (const auto& [payload, n] : mp.expansions) piece = piece * payload.pow(Rat(n));
                fixups.push_back(std::move(piece));
            }
        }
    }
    Expr res = poly_to_expr(std::move(direct));
    for (const auto& f : fixups) res = res + f;
    return res;
}

bool poly_is_one(const Poly& p) { return p.is_constant() && !p.is_zero() && p.constant_value() == 1; }

} // namespace

// --- Expr construction and canonical reduction --------------------------------

Expr::Expr(const Symbol& s) {
    Monomial m;
    m.factors.push_back(Factor{Base::sym(s), Rat(1)});
    num_ = Poly::single(std::move(m), Rat(1));
    den_ = Poly::constant(1);
}

Expr Expr::from_parts(Poly num, Poly den) {
    if (den.is_zero()) throw Error("division by zero");
    Expr e;
    if (num.is_zero()) return e;
    if (!den.is_constant()) {
        Poly g = poly_gcd(num, den);
        if (!g.is_constant()) {
            Poly qn, qd;
            auto l = exponent_scale(num, den);
            if (scale_is_trivial(l)) {
                if (!poly_divide_exact(num, g, qn) || !poly_divide_exact(den, g, qd))
                    throw Error("internal: gcd does not divide");
            } else {
                Poly gs = apply_scale(g, l, false);
                if (!poly_divide_exact(apply_scale(num, l, false), gs, qn) ||
                    !poly_divide_exact(apply_scale(den, l, false), gs, qd))
                    throw Error("internal: gcd does not divide");
                qn = apply_scale(qn, l, true);
                qd = apply_scale(qd, l, true);
            }
            num = std::move(qn);
            den = std::move(qd);
        }
    }
    Rat dc;
    Poly dp;
    den.content_primitive(dc, dp);
    e.num_ = num.scale(Rat(1) / dc);
    e.den_ = std::move(dp);
    return e;
}

Rat Expr::rational_value() const {
    if (!is_rational()) throw Error("expression is not a rational constant");
    return num_.constant_value() / den_.constant_value();
}

Expr Expr::operator+(const Expr& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return from_parts(num_ + o.num_, den_);
    Expr a = poly_mul_expr(num_, o.den_);
    Expr b = poly_mul_expr(o.num_, den_);
    Expr d = poly_mul_expr(den_, o.den_);
    if (poly_is_one(a.den_) && poly_is_one(b.den_) && poly_is_one(d.den_))
        return from_parts(a.num_ + b.num_, d.num_);
    return (a + b) / d;
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator-() const {
    Expr e;
    e.num_ = num_.negate();
    e.den_ = den_;
    return e;
}

Expr Expr::operator*(const Expr& o) const {
    if (is_zero() || o.is_zero()) return Expr();
    Expr nn = poly_mul_expr(num_, o.num_);
    Expr dd = poly_mul_expr(den_, o.den_);
    if (poly_is_one(nn.den_) && poly_is_one(dd.den_)) return from_parts(nn.num_, dd.num_);
    return nn / dd;
}

Expr Expr::operator/(const Expr& o) const {
    if (o.is_zero()) throw Error("division by zero");
    return *this * o.inverse();
}

Expr Expr::inverse() const {
    if (is_zero()) throw Error("division by zero");
    return from_parts(den_, num_);
}

namespace {

// positive rational content of a polynomial; rest keeps the original sign
void split_positive_content(const Poly& p, Rat& c, Poly& rest) {
    Rat signed_c;
    p.content_primitive(signed_c, rest);
    if (signed_c < 0) {
        c = -signed_c;
        rest = rest.negate();
    } else {
        c = signed_c;
    }
}

bool is_unit_single_factor(const Poly& p, Factor& f) {
    if (p.terms.size() != 1) return false;
    const auto& [m, c] = *p.terms.begin();
    if (c != 1 || m.factors.size() != 1) return false;
    f = m.factors[0];
    return true;
}

Expr factor_to_expr(const Base& b, const Rat& e) {
    if (e == 0) return Expr(1);
    if (e < 0) return factor_to_expr(b, -e).inverse();
    if (b.tag() == Base::Tag::Quote) {
        // keep quote exponents in (0,1); integral part expands
        Int n = e.get_num() / e.get_den();
        Rat frac = e - Rat(n);
        Expr res(1);
        if (n != 0) res = b.sub().pow(Rat(n));
        if (frac != 0) {
            Monomial m;
            m.factors.push_back(Factor{b, frac});
            res = res * Expr::from_parts(Poly::single(std::move(m), Rat(1)), Poly::constant(1));
        }
        return res;
    }
    if (b.tag() == Base::Tag::Kernel && b.kernel_kind() == KernelKind::Exp && e != 1)
        return Expr::exp(b.sub() * Expr(e));
    Monomial m;
    m.factors.push_back(Factor{b, e});
    return Expr::from_parts(Poly::single(std::move(m), Rat(1)), Poly::constant(1));
}

Expr rational_pow(const Rat& q, const Rat& r) {
    // r non-integer here; q nonzero
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    Rat frac = r - Rat(fl);
    if (!fl.fits_slong_p()) throw Error("exponent too large");
    Rat intpart = rat_pow(q, fl.get_si());
    unsigned long b = frac.get_den().get_ui();
    long a = frac.get_num().get_si();
    Rat root;
    if (rat_root(q, b, root)) return Expr(intpart * rat_pow(root, a));
    Monomial m;
    m.factors.push_back(Factor{Base::quote(Expr(q)), frac});
    return Expr(intpart) *
           Expr::from_parts(Poly::single(std::move(m), Rat(1)), Poly::constant(1));
}

} // namespace

Expr Expr::pow(const Rat& r) const {
    if (r == 0) return Expr(1);
    if (is_zero()) {
        if (r > 0) return Expr();
        throw Error("division by zero");
    }
    if (rat_is_integer(r)) {
        if (r < 0) return inverse().pow(-r);
        if (!r.get_num().fits_slong_p()) throw Error("exponent too large");
        long n = r.get_num().get_si();
        Expr acc(1), base = *this;
        while (n) {
            if (n & 1) acc = acc * base;
            if (n >>= 1) base = base * base;
        }
        return acc;
    }
    if (is_rational()) return rational_pow(rational_value(), r);

    Factor f;
    if (poly_is_one(den_) && is_unit_single_factor(num_, f)) {
        if (f.base.tag() == Base::Tag::Kernel && f.base.kernel_kind() == KernelKind::Exp)
            return Expr::exp(f.base.sub() * Expr(f.exp * r));
        if (f.exp == 1) return factor_to_expr(f.base, r);
        // no exponent merging through non-integer powers of a general base
    }

    Rat cn, cd;
    Poly pn, pd;
    split_positive_content(num_, cn, pn);
    split_positive_content(den_, cd, pd);
    Expr content_part = rational_pow(cn / cd, r);
    Expr core = from_parts(pn, pd);
    if (core == Expr(1)) return content_part;

    Factor cf;
    if (poly_is_one(core.den_) && is_unit_single_factor(core.num_, cf) && cf.exp == 1)
        return content_part * factor_to_expr(cf.base, r);

    Int tr = r.get_num() / r.get_den(); // toward zero
    Rat frac = r - Rat(tr);
    Expr res = content_part;
    if (tr != 0) {
        if (!tr.fits_slong_p()) throw Error("exponent too large");
        res = res * core.pow(Rat(tr));
    }
    if (frac != 0) res = res * factor_to_expr(Base::quote(core), frac);
    return res;
}

Expr Expr::exp(const Expr& e) {
    if (e.is_zero()) return Expr(1);
    Monomial m;
    m.factors.push_back(Factor{Base::kernel(KernelKind::Exp, e), Rat(1)});
    return from_parts(Poly::single(std::move(m), Rat(1)), Poly::constant(1));
}

Expr Expr::ln(const Expr& e) {
    if (e == Expr(1)) return Expr();
    Monomial m;
    m.factors.push_back(Factor{Base::kernel(KernelKind::Ln, e), Rat(1)});
    return from_parts(Poly::single(std::move(m), Rat(1)), Poly::constant(1));
}

Expr Expr::arctan(const Expr& e) {
    if (e.is_zero()) return Expr();
    Monomial m;
    m.factors.push_back(Factor{Base::kernel(KernelKind::Arctan, e), Rat(1)});
    return from_parts(Poly::single(std::move(m), Rat(1)), Poly::constant(1));
}

int Expr::compare(const Expr& o) const {
    int c = num_.compare(o.num_);
    if (c != 0) return c;
    return den_.compare(o.den_);
}

// --- structural queries --------------------------------------------------------

namespace {

void base_symbols(const Base& b, std::set<Symbol>& out);

void poly_symbols(const Poly& p, std::set<Symbol>& out) {
    for (const auto& [m, c] : p.terms)
        for (const auto& f : m.factors) base_symbols(f.base, out);
}

void base_symbols(const Base& b, std::set<Symbol>& out) {
    if (b.tag() == Base::Tag::Sym) {
        out.insert(b.symbol());
    } else {
        b.sub().symbols(out);
    }
}

bool base_contains(const Base& b, const Symbol& s) {
    if (b.tag() == Base::Tag::Sym) return b.symbol() == s;
    return b.sub().contains(s);
}

bool poly_contains(const Poly& p, const Symbol& s) {
    for (const auto& [m, c] : p.terms)
        for (const auto& f : m.factors)
            if (base_contains(f.base, s)) return true;
    return false;
}

bool poly_has_kernels(const Poly& p) {
    for (const auto& [m, c] : p.terms)
        for (const auto& f : m.factors)
            if (f.base.tag() != Base::Tag::Sym) return true;
    return false;
}

} // namespace

void Expr::symbols(std::set<Symbol>& out) const {
    poly_symbols(num_, out);
    poly_symbols(den_, out);
}

bool Expr::contains(const Symbol& s) const {
    return poly_contains(num_, s) || poly_contains(den_, s);
}

bool Expr::has_kernels() const { return poly_has_kernels(num_) || poly_has_kernels(den_); }

bool Expr::polynomial_in_symbols() const {
    if (!den_.is_constant()) return false;
    if (poly_has_kernels(num_)) return false;
    for (const auto& [m, c] : num_.terms)
        for (const auto& f : m.factors)
            if (!rat_is_integer(f.exp)) return false;
    return true;
}

// --- normalize ------------------------------------------------------------------

namespace {

Expr rebuild_base(const Base& b) {
    switch (b.tag()) {
        case Base::Tag::Sym:
            return Expr(b.symbol());
        case Base::Tag::Kernel:
            switch (b.kernel_kind()) {
                case KernelKind::Exp:
                    return Expr::exp(normalize(b.sub()));
                case KernelKind::Ln:
                    return Expr::ln(normalize(b.sub()));
                case KernelKind::Arctan:
                    return Expr::arctan(normalize(b.sub()));
            }
            break;
        case Base::Tag::Quote:
            return normalize(b.sub());
    }
    throw Error("internal: bad base");
}

Expr rebuild_poly(const Poly& p) {
    Expr acc;
    for (const auto& [m, c] : p.terms) {
        Expr term(c);
        for (const auto& f : m.factors) term = term * rebuild_base(f.base).pow(f.exp);
        acc = acc + term;
    }
    return acc;
}

} // namespace

Expr normalize(const Expr& e) { return rebuild_poly(e.num()) / rebuild_poly(e.den()); }

// --- diff ------------------------------------------------------------------------

namespace {

Expr diff_base(const Base& b, const Symbol& s) {
    switch (b.tag()) {
        case Base::Tag::Sym:
            return b.symbol() == s ? Expr(1) : Expr();
        case Base::Tag::Kernel: {
            Expr da = diff(b.sub(), s);
            if (da.is_zero()) return Expr();
            switch (b.kernel_kind()) {
                case KernelKind::Exp:
                    return Expr::exp(b.sub()) * da;
                case KernelKind::Ln:
                    return da / b.sub();
                case KernelKind::Arctan:
                    return da / (Expr(1) + b.sub() * b.sub());
            }
            break;
        }
        case Base::Tag::Quote:
            return diff(b.sub(), s);
    }
    throw Error("internal: bad base");
}

Expr diff_poly(const Poly& p, const Symbol& s) {
    Poly fast;
    Expr slow;
    for (const auto& [m, c] : p.terms) {
        bool touched = false;
        bool fastable = true;
        for (const auto& f : m.factors) {
            if (!base_contains(f.base, s)) continue;
            touched = true;
            if (!(f.base.tag() == Base::Tag::Sym && f.base.symbol() == s && f.exp >= 1))
                fastable = false;
        }
        if (!touched) continue;
        if (fastable) {
            // single factor in s (map-merged), exponent >= 1
            Monomial mm;
            Rat coeff = c;
            for (const auto& f : m.factors) {
                if (f.base.tag() == Base::Tag::Sym && f.base.symbol() == s) {
                    coeff *= f.exp;
                    if (f.exp != 1) mm.factors.push_back(Factor{f.base, f.exp - 1});
                } else {
                    mm.factors.push_back(f);
                }
            }
            fast.add_term(std::move(mm), coeff);
        } else {
            for (size_t i = 0; i < m.factors.size(); ++i) {
                const Factor& fi = m.factors[i];
                if (!base_contains(fi.base, s)) continue;
                Expr term(c);
                for (size_t j = 0; j < m.factors.size(); ++j) {
                    if (j == i) continue;
                    term = term * factor_to_expr(m.factors[j].base, m.factors[j].exp);
                }
                Expr dfi = factor_to_expr(fi.base, fi.exp - 1) * Expr(fi.exp) *
                           diff_base(fi.base, s);
                slow = slow + term * dfi;
            }
        }
    }
    return poly_to_expr(std::move(fast)) + slow;
}

} // namespace

Expr diff(const Expr& e, const Symbol& s) {
    if (e.den().is_constant()) {
        Expr d = diff_poly(e.num(), s);
        Rat dc = e.den().constant_value();
        return dc == 1 ? d : d * Expr(Rat(1) / dc);
    }
    Expr dn = diff_poly(e.num(), s);
    Expr dd = diff_poly(e.den(), s);
    Expr den = poly_to_expr(e.den());
    Expr num = poly_to_expr(e.num());
    return dn / den - num * dd / (den * den);
}

// --- substitute -------------------------------------------------------------------

namespace {

bool poly_mentions_any(const Poly& p, const std::map<Symbol, Expr>& b) {
    std::set<Symbol> syms;
    poly_symbols(p, syms);
    for (const auto& [s, e] : b)
        if (syms.count(s)) return true;
    return false;
}

Expr subst_base(const Base& b, const std::map<Symbol, Expr>& bindings) {
    switch (b.tag()) {
        case Base::Tag::Sym: {
            auto it = bindings.find(b.symbol());
            return it == bindings.end() ? Expr(b.symbol()) : it->second;
        }
        case Base::Tag::Kernel: {
            Expr a = substitute(b.sub(), bindings);
            switch (b.kernel_kind()) {
                case KernelKind::Exp:
                    return Expr::exp(a);
                case KernelKind::Ln:
                    return Expr::ln(a);
                case KernelKind::Arctan:
                    return Expr::arctan(a);
            }
            break;
        }
        case Base::Tag::Quote:
            return substitute(b.sub(), bindings);
    }
    throw Error("internal: bad base");
}

Expr subst_poly(const Poly& p, const std::map<Symbol, Expr>& bindings) {
    Poly fast;
    Expr slow;
    for (const auto& [m, c] : p.terms) {
        bool touched = false;
        for (const auto& f : m.factors) {
            std::set<Symbol> syms;
            base_symbols(f.base, syms);
            for (const auto& [s, e] : bindings)
                if (syms.count(s)) {
                    touched = true;
                    break;
                }
            if (touched) break;
        }
        if (!touched) {
            fast.add_term(m, c);
            continue;
        }
        Expr term(c);
        for (const auto& f : m.factors) term = term * subst_base(f.base, bindings).pow(f.exp);
        slow = slow + term;
    }
    return poly_to_expr(std::move(fast)) + slow;
}

} // namespace

Expr substitute(const Expr& e, const std::map<Symbol, Expr>& bindings) {
    if (bindings.empty()) return e;
    if (!poly_mentions_any(e.num(), bindings) && !poly_mentions_any(e.den(), bindings)) return e;
    Expr n = subst_poly(e.num(), bindings);
    Expr d = subst_poly(e.den(), bindings);
    return n / d; // throws on introduced division by zero
}

// --- eps truncation ----------------------------------------------------------------

namespace {

bool base_has_eps_inside(const Base& b) {
    if (b.tag() == Base::Tag::Sym) return false;
    return b.sub().contains(Symbol::eps());
}

} // namespace

EpsTruncated eps_truncate(const Expr& e) {
    const Symbol eps = Symbol::eps();
    if (poly_contains(e.den(), eps)) throw Error("not truncatable");
    Poly p0, p1;
    for (const auto& [m, c] : e.num().terms) {
        Rat eps_exp(0);
        Monomial rest;
        for (const auto& f : m.factors) {
            if (f.base.tag() == Base::Tag::Sym && f.base.symbol() == eps) {
                eps_exp = f.exp;
            } else {
                if (base_has_eps_inside(f.base)) throw Error("not truncatable");
                rest.factors.push_back(f);
            }
        }
        if (!rat_is_integer(eps_exp)) throw Error("not truncatable");
        if (eps_exp == 0)
            p0.add_term(std::move(rest), c);
        else if (eps_exp == 1)
            p1.add_term(std::move(rest), c);
        // eps^k, k >= 2 discarded
    }
    EpsTruncated out;
    out.order0 = Expr::from_parts(std::move(p0), e.den());
    out.order1 = Expr::from_parts(std::move(p1), e.den());
    return out;
}

bool is_zero(const Expr& e) { return e.is_zero(); }

// --- randomized zero check -----------------------------------------------------------

ZeroCheck zero_check(const Expr& e, unsigned seed, int attempts) {
    ZeroCheck out;
    if (e.is_zero()) {
        out.status = ZeroStatus::Zero;
        return out;
    }
    std::set<Symbol> syms;
    e.symbols(syms);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num_d(-12, 12);
    std::uniform_int_distribution<int> den_d(1, 4);
    for (int k = 0; k < attempts; ++k) {
        std::map<Symbol, Expr> b;
        std::map<Symbol, Rat> point;
        for (const auto& s : syms) {
            Rat q = rat(num_d(rng), den_d(rng));
            point.emplace(s, q);
            b.emplace(s, Expr(q));
        }
        Expr v;
        try {
            v = substitute(e, b);
        } catch (const Error&) {
            continue; // singular point, resample
        }
        if (v.is_rational()) {
            if (v.rational_value() != 0) {
                out.status = ZeroStatus::NonzeroWitness;
                out.witness = std::move(point);
                return out;
            }
            continue;
        }
        if (numeric_nonzero(v)) {
            out.status = ZeroStatus::NonzeroWitness;
            out.witness = std::move(point);
            return out;
        }
    }
    out.status = ZeroStatus::Inconclusive;
    return out;
}

} // namespace approxsym
