#ifndef APPROXSYM_SYMBOL_HPP
#define APPROXSYM_SYMBOL_HPP

#include <compare>
#include <string>

#include "approxsym/rational.hpp"

namespace approxsym {

// Symbol kinds, in the order they appear in monomial comparisons:
// parameters first, then eps, x, t, u, and jet coordinates ordered by
// multi-index length then string.
enum class SymbolKind { Parameter, Perturbation, IndependentX, IndependentT, Dependent, Jet };

class Symbol {
  public:
    static Symbol x() { return Symbol(SymbolKind::IndependentX, "x"); }
    static Symbol t() { return Symbol(SymbolKind::IndependentT, "t"); }
    static Symbol u() { return Symbol(SymbolKind::Dependent, "u"); }
    static Symbol eps() { return Symbol(SymbolKind::Perturbation, "eps"); }
    static Symbol parameter(const std::string& name) { return Symbol(SymbolKind::Parameter, name); }
    // u_J with J = x^nx t^nt; the canonical index string is all x's then all t's.
    static Symbol jet(int nx, int nt) {
        if (nx < 0 || nt < 0 || nx + nt < 1) throw Error("bad jet multi-index");
        Symbol s(SymbolKind::Jet, "u");
        s.jet_x_ = nx;
        s.jet_t_ = nt;
        return s;
    }

    SymbolKind kind() const { return kind_; }
    const std::string& base_name() const { return name_; }
    int jet_x() const { return jet_x_; }
    int jet_t() const { return jet_t_; }
    int jet_order() const { return jet_x_ + jet_t_; }
    bool is_jet() const { return kind_ == SymbolKind::Jet; }

    std::string name() const {
        if (kind_ != SymbolKind::Jet) return name_;
        return "u_" + std::string(jet_x_, 'x') + std::string(jet_t_, 't');
    }

    std::strong_ordering operator<=>(const Symbol& o) const {
        if (kind_ != o.kind_) return kind_ <=> o.kind_;
        if (kind_ == SymbolKind::Jet) {
            if (jet_order() != o.jet_order()) return jet_order() <=> o.jet_order();
            // length ties broken by the canonical index string ("tt" < "xt" < "xx")
            if (jet_x_ != o.jet_x_) return jet_x_ <=> o.jet_x_;
            return std::strong_ordering::equal;
        }
        return name_.compare(o.name_) <=> 0;
    }
    bool operator==(const Symbol& o) const { return (*this <=> o) == 0; }

  private:
    Symbol(SymbolKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}
    SymbolKind kind_;
    std::string name_;
    int jet_x_ = 0, jet_t_ = 0;
};

} // namespace approxsym

#endif
