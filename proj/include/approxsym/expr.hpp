#ifndef APPROXSYM_EXPR_HPP
#define APPROXSYM_EXPR_HPP

#include <map>
#include <memory>
#include <set>
#include <vector>

#include "approxsym/rational.hpp"
#include "approxsym/symbol.hpp"

namespace approxsym {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class KernelKind { Exp, Ln, Arctan };

// A factor base: a plain symbol, a transcendental kernel over a canonical
// argument, or a quoted compound expression carrying a fractional power.
class Base {
  public:
    enum class Tag { Sym, Kernel, Quote };

    static Base sym(const Symbol& s);
    static Base kernel(KernelKind k, Expr arg);
    static Base quote(Expr payload);

    Tag tag() const { return tag_; }
    const Symbol& symbol() const { return sym_; }
    KernelKind kernel_kind() const { return kfun_; }
    const Expr& sub() const { return *sub_; } // kernel argument / quoted payload

    int compare(const Base& o) const; // total order, recursive on sub()
    bool operator==(const Base& o) const { return compare(o) == 0; }
    bool operator<(const Base& o) const { return compare(o) < 0; }

    Base() : sym_(Symbol::x()) {} // default: the symbol x

  private:
    Tag tag_ = Tag::Sym;
    Symbol sym_;
    KernelKind kfun_ = KernelKind::Exp;
    ExprPtr sub_;
};

struct Factor {
    Base base;
    Rat exp; // nonzero; > 0 inside polynomials
};

// Product of factors, sorted by base. Invariants maintained by the engine:
// exponents positive; at most one Exp factor, with exponent 1; Quote
// exponents strictly between 0 and 1.
class Monomial {
  public:
    std::vector<Factor> factors;

    bool empty() const { return factors.empty(); }
    int compare(const Monomial& o) const;
    bool operator==(const Monomial& o) const { return compare(o) == 0; }
    const Rat* exponent_of(const Base& b) const;
};

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return a.compare(b) < 0; }
};

// Sparse multivariate polynomial over the factor bases; nonzero coefficients only.
class Poly {
  public:
    std::map<Monomial, Rat, MonoLess> terms;

    static Poly zero() { return Poly{}; }
    static Poly constant(const Rat& q);
    static Poly single(Monomial m, const Rat& c);

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const;
    Rat constant_value() const; // requires is_constant
    void add_term(Monomial m, Rat c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly negate() const;
    Poly scale(const Rat& q) const;
    bool operator==(const Poly& o) const;
    int compare(const Poly& o) const;

    // Rational content and integer-primitive part: *this == content * primitive,
    // primitive has coprime integer coefficients and positive leading coefficient.
    void content_primitive(Rat& content, Poly& primitive) const;
    // Coefficients of each power of `b`, with that base removed from the monomials.
    std::map<Rat, Poly> collect_by(const Base& b) const;
    void bases(std::set<Base>& out) const; // bases appearing at top level
    const Rat& leading_coeff() const;      // coefficient of the highest monomial
};

// gcd of two polynomials, all bases treated as independent variables
// (fractional exponents handled by per-base exponent scaling).
Poly poly_gcd(const Poly& a, const Poly& b);
bool poly_divide_exact(const Poly& num, const Poly& den, Poly& quot);

// Immutable expression over exact rationals, kept in canonical form: a
// reduced fraction of expanded polynomials. Equal rational-class expressions
// (no kernels, integer exponents) always compare equal; kernel-bearing
// expressions are normalized structurally. All operations are pure.
class Expr {
  public:
    Expr() : num_(Poly::zero()), den_(Poly::constant(1)) {}
    Expr(const Rat& q) : num_(Poly::constant(q)), den_(Poly::constant(1)) {}
    Expr(long n) : Expr(Rat(n)) {}
    explicit Expr(const Symbol& s);

    static Expr exp(const Expr& e);
    static Expr ln(const Expr& e);
    static Expr arctan(const Expr& e);
    static Expr sqrt(const Expr& e) { return e.pow(Rat(1, 2)); }
    static Expr from_parts(Poly num, Poly den); // canonicalizes

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator-() const;
    Expr operator*(const Expr& o) const;
    Expr operator/(const Expr& o) const;
    Expr inverse() const;
    Expr pow(const Rat& r) const;

    bool is_zero() const { return num_.is_zero(); }
    bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
    Rat rational_value() const;

    bool operator==(const Expr& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Expr& o) const { return !(*this == o); }
    int compare(const Expr& o) const;

    void symbols(std::set<Symbol>& out) const;         // recursive through kernels
    bool contains(const Symbol& s) const;
    bool has_kernels() const;                           // any kernel/quote anywhere
    bool polynomial_in_symbols() const;                 // den==1, integer exps, no kernels

  private:
    Poly num_, den_;
};

// --- module operations ---------------------------------------------------

// Re-canonicalizes by rebuilding the expression from its own structure.
// Idempotent; the canonical representation makes this a structural audit.
Expr normalize(const Expr& e);

// Partial derivative; every Symbol (jet coordinates included) is independent.
Expr diff(const Expr& e, const Symbol& s);

// Simultaneous substitution followed by normalization. Throws Error on
// division by zero introduced by the bindings.
Expr substitute(const Expr& e, const std::map<Symbol, Expr>& bindings);

// order0 + eps*order1 in the quotient ring with eps^2 = 0.
struct EpsTruncated {
    Expr order0, order1;
};

// Throws Error("not truncatable") if eps sits in a denominator or inside a
// kernel argument.
EpsTruncated eps_truncate(const Expr& e);

bool is_zero(const Expr& e);

// Randomized companion check: substitutes random rational points for symbols
// and, when kernels survive, falls back to high-precision numeric evaluation.
enum class ZeroStatus { Zero, NonzeroWitness, Inconclusive };
struct ZeroCheck {
    ZeroStatus status = ZeroStatus::Inconclusive;
    std::map<Symbol, Rat> witness; // populated for NonzeroWitness
};
ZeroCheck zero_check(const Expr& e, unsigned seed = 0, int attempts = 20);

// numeval.cpp: high-precision evaluation of a symbol-free expression.
// Returns false if the value could not be resolved away from zero.
bool numeric_nonzero(const Expr& e);

} // namespace approxsym

#endif
