#include <mpfr.h>

#include "approxsym/expr.hpp"

namespace approxsym {

namespace {

constexpr mpfr_prec_t kPrec = 384;

class Mp {
  public:
    Mp() { mpfr_init2(v, kPrec); }
    ~Mp() { mpfr_clear(v); }
    Mp(const Mp&) = delete;
    Mp& operator=(const Mp&) = delete;
    mpfr_t v;
};

bool eval_expr(const Expr& e, mpfr_t out);

bool eval_base(const Base& b, mpfr_t out) {
    switch (b.tag()) {
        case Base::Tag::Sym:
            return false; // symbols must have been substituted away
        case Base::Tag::Kernel: {
            Mp a;
            if (!eval_expr(b.sub(), a.v)) return false;
            switch (b.kernel_kind()) {
                case KernelKind::Exp:
                    mpfr_exp(out, a.v, MPFR_RNDN);
                    return true;
                case KernelKind::Ln:
                    if (mpfr_sgn(a.v) <= 0) return false;
                    mpfr_log(out, a.v, MPFR_RNDN);
                    return true;
                case KernelKind::Arctan:
                    mpfr_atan(out, a.v, MPFR_RNDN);
                    return true;
            }
            return false;
        }
        case Base::Tag::Quote:
            return eval_expr(b.sub(), out);
    }
    return false;
}

bool eval_poly(const Poly& p, mpfr_t out) {
    mpfr_set_zero(out, 1);
    Mp term, bv, pw, ev;
    for (const auto& [m, c] : p.terms) {
        mpfr_set_q(term.v, c.get_mpq_t(), MPFR_RNDN);
        for (const auto& f : m.factors) {
            if (!eval_base(f.base, bv.v)) return false;
            if (rat_is_integer(f.exp) && f.exp.get_num().fits_slong_p()) {
                mpfr_pow_si(pw.v, bv.v, f.exp.get_num().get_si(), MPFR_RNDN);
            } else {
                if (mpfr_sgn(bv.v) < 0) return false; // fractional power of a negative
                mpfr_set_q(ev.v, f.exp.get_mpq_t(), MPFR_RNDN);
                mpfr_pow(pw.v, bv.v, ev.v, MPFR_RNDN);
            }
            if (mpfr_nan_p(pw.v) || mpfr_inf_p(pw.v)) return false;
            mpfr_mul(term.v, term.v, pw.v, MPFR_RNDN);
        }
        mpfr_add(out, out, term.v, MPFR_RNDN);
    }
    return true;
}

bool eval_expr(const Expr& e, mpfr_t out) {
    Mp n, d;
    if (!eval_poly(e.num(), n.v) || !eval_poly(e.den(), d.v)) return false;
    if (mpfr_zero_p(d.v)) return false;
    mpfr_div(out, n.v, d.v, MPFR_RNDN);
    return !mpfr_nan_p(out) && !mpfr_inf_p(out);
}

} // namespace

bool numeric_nonzero(const Expr& e) {
    Mp v;
    if (!eval_expr(e, v.v)) return false;
    if (mpfr_zero_p(v.v)) return false;
    // comfortably away from the rounding noise floor of 384-bit arithmetic
    Mp threshold;
    mpfr_set_ui_2exp(threshold.v, 1, -128, MPFR_RNDN);
    Mp av;
    mpfr_abs(av.v, v.v, MPFR_RNDN);
    return mpfr_cmp(av.v, threshold.v) > 0;
}

} // namespace approxsym
