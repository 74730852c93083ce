#include "approxsym/parser.hpp"

#include <cctype>

namespace approxsym {

namespace {

bool is_func_name(const std::string& s) {
    return s == "exp" || s == "ln" || s == "arctan" || s == "sqrt";
}

Symbol symbol_from_name(const std::string& name) {
    if (name == "x") return Symbol::x();
    if (name == "t") return Symbol::t();
    if (name == "u") return Symbol::u();
    if (name == "eps") return Symbol::eps();
    if (name.size() > 2 && name[0] == 'u' && name[1] == '_') {
        int nx = 0, nt = 0;
        bool jet = true;
        for (size_t i = 2; i < name.size(); ++i) {
            if (name[i] == 'x')
                ++nx;
            else if (name[i] == 't')
                ++nt;
            else {
                jet = false;
                break;
            }
        }
        if (jet) return Symbol::jet(nx, nt);
    }
    return Symbol::parameter(name);
}

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    Expr run() {
        skip_ws();
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

  private:
    const std::string& text_;
    size_t pos_ = 0;
    int depth_ = 0;

    struct DepthGuard {
        explicit DepthGuard(Parser& p) : p_(p) {
            if (++p_.depth_ > 500) p_.fail("expression nested too deeply");
        }
        ~DepthGuard() { --p_.depth_; }
        Parser& p_;
    };

    [[noreturn]] void fail(const std::string& msg) const {
        int line = 1, col = 1;
        for (size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

    int peek() const { return pos_ < text_.size() ? text_[pos_] : -1; }
    void advance() { ++pos_; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    Expr parse_expr() {
        DepthGuard guard(*this);
        skip_ws();
        bool neg = false;
        if (peek() == '-') { // accepted superset: leading unary minus
            advance();
            neg = true;
        }
        Expr acc = parse_term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                advance();
                acc = acc + parse_term();
            } else if (peek() == '-') {
                advance();
                acc = acc - parse_term();
            } else {
                return acc;
            }
        }
    }

    Expr parse_term() {
        Expr acc = parse_factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                advance();
                acc = acc * parse_factor();
            } else if (peek() == '/') {
                advance();
                Expr d = parse_factor();
                if (d.is_zero()) fail("division by zero");
                acc = acc / d;
            } else {
                return acc;
            }
        }
    }

    Expr parse_factor() {
        Expr b = parse_base();
        skip_ws();
        if (peek() == '^') {
            advance();
            Rat e = parse_rational_token();
            return b.pow(e);
        }
        return b;
    }

    Expr parse_base() {
        skip_ws();
        int c = peek();
        if (c == '(') {
            advance();
            Expr e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(c)) return Expr(parse_rational_token());
        if (std::isalpha(c)) {
            std::string name = parse_name();
            skip_ws();
            if (is_func_name(name)) {
                if (!eat('(')) fail("function '" + name + "' requires an argument");
                Expr arg = parse_expr();
                if (!eat(')')) fail("expected ')'");
                if (name == "exp") return Expr::exp(arg);
                if (name == "ln") return Expr::ln(arg);
                if (name == "arctan") return Expr::arctan(arg);
                return Expr::sqrt(arg);
            }
            return Expr(symbol_from_name(name));
        }
        fail("expected expression");
    }

    std::string parse_name() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    // digits ('/' digits)? with optional leading '-'; the '/' part binds only
    // when immediately followed by a digit
    Rat parse_rational_token() {
        skip_ws();
        size_t start = pos_;
        if (peek() == '-') advance();
        if (!std::isdigit(peek())) fail("expected number");
        while (std::isdigit(peek())) advance();
        if (peek() == '/' && pos_ + 1 < text_.size() &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            advance();
            while (std::isdigit(peek())) advance();
        }
        try {
            return rat_parse(text_.substr(start, pos_ - start));
        } catch (const Error& e) {
            fail(e.what());
        }
    }
};

// --- printer ----------------------------------------------------------------

std::string print_poly(const Poly& p);

std::string base_inner(const Base& b) {
    switch (b.tag()) {
        case Base::Tag::Sym:
            return b.symbol().name();
        case Base::Tag::Kernel: {
            std::string fn = b.kernel_kind() == KernelKind::Exp      ? "exp"
                             : b.kernel_kind() == KernelKind::Ln     ? "ln"
                                                                     : "arctan";
            return fn + "(" + print(b.sub()) + ")";
        }
        case Base::Tag::Quote:
            return print(b.sub());
    }
    return {};
}

std::string base_str(const Base& b) {
    if (b.tag() == Base::Tag::Quote) return "(" + base_inner(b) + ")";
    return base_inner(b);
}

std::string factor_str(const Factor& f) {
    if (f.exp == Rat(1, 2)) return "sqrt(" + base_inner(f.base) + ")";
    if (f.exp == 1) return base_str(f.base);
    return base_str(f.base) + "^" + rat_str(f.exp);
}

std::string term_str(const Monomial& m, const Rat& coeff_abs, bool include_one) {
    std::string s;
    if (m.empty()) return rat_str(coeff_abs);
    if (coeff_abs != 1 || include_one) s = rat_str(coeff_abs) + "*";
    bool first = true;
    for (const auto& f : m.factors) {
        if (!first) s += "*";
        s += factor_str(f);
        first = false;
    }
    return s;
}

std::string print_poly(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        const auto& [m, c] = *it;
        if (first) {
            // a negative leading coefficient is folded into the rational token
            s = c < 0 ? term_str(m, c, !m.empty()) : term_str(m, c, false);
            first = false;
        } else {
            s += c < 0 ? " - " : " + ";
            s += term_str(m, abs(c), false);
        }
    }
    return s;
}

bool den_needs_parens(const Poly& p) {
    if (p.terms.size() != 1) return true;
    const auto& [m, c] = *p.terms.begin();
    if (c != 1) return true;
    return m.factors.size() != 1;
}

} // namespace

Expr parse(const std::string& text) { return Parser(text).run(); }

std::string print(const Rat& q) { return rat_str(q); }

std::string print(const Expr& e) {
    if (e.is_zero()) return "0";
    std::string ns = print_poly(e.num());
    if (e.den().is_constant()) return ns;
    if (e.num().terms.size() > 1) ns = "(" + ns + ")";
    std::string ds = print_poly(e.den());
    if (den_needs_parens(e.den())) ds = "(" + ds + ")";
    return ns + "/" + ds;
}

} // namespace approxsym
