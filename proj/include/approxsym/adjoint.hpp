#ifndef APPROXSYM_ADJOINT_HPP
#define APPROXSYM_ADJOINT_HPP

#include "approxsym/liealg.hpp"

namespace approxsym {

// Univariate polynomial in the group parameter mu, dense coefficients.
class UPoly {
  public:
    std::vector<Rat> c; // c[k] is the mu^k coefficient; no trailing zeros

    static UPoly zero() { return {}; }
    static UPoly constant(const Rat& q);
    static UPoly monomial(const Rat& q, size_t deg);

    bool is_zero() const { return c.empty(); }
    size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
    void trim();

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly scale(const Rat& q) const;
    UPoly derivative() const;
    Rat eval(const Rat& mu) const;
    bool operator==(const UPoly& o) const { return c == o.c; }
};

// Finite sum of e^(lambda mu) p_lambda(mu) with rational lambda.
class ExpPoly {
  public:
    std::map<Rat, UPoly> terms; // lambda -> p, no zero polynomials

    static ExpPoly from_upoly(UPoly p, const Rat& lambda = Rat(0));

    bool is_zero() const { return terms.empty(); }
    void add(const Rat& lambda, const UPoly& p);
    ExpPoly operator+(const ExpPoly& o) const;
    ExpPoly operator*(const ExpPoly& o) const; // lambdas add
    ExpPoly scale(const Rat& q) const;
    ExpPoly derivative() const; // d/dmu
    Rat at_zero() const;
    // k-th Taylor coefficient at mu = 0 (exact)
    Rat taylor_coeff(size_t k) const;
    // symbolic value with mu bound to an expression
    Expr to_expr(const Expr& mu) const;
    // exact value at rational mu when no exponential factor is present
    Rat eval_polynomial(const Rat& mu) const;
    // exact value when every p is constant, with s substituted for e^mu
    Rat eval_exp_scale(const Rat& s) const;
    bool operator==(const ExpPoly& o) const { return terms == o.terms; }
};

// (ad v_i)^k_j = c_ijk as a matrix acting on coordinate vectors.
RatMat ad_matrix(const LieAlgebraTable& g, size_t i);

// exp(sign mu A) in closed form via the additive Jordan-Chevalley
// decomposition; requires the minimal polynomial to split over Q and throws
// Error("non-rational spectrum") otherwise.
std::vector<std::vector<ExpPoly>> exact_exp(const RatMat& a, int sign);

// Ad(exp(mu v_i)) = exp(-mu ad v_i); entries[k][j] is the v_k coefficient of
// the image of v_j.
struct AdjointMatrix {
    size_t generator = 0;
    std::vector<std::vector<ExpPoly>> entries;
    size_t dim() const { return entries.size(); }
};

AdjointMatrix adjoint_matrix(const LieAlgebraTable& g, size_t i);

std::vector<Expr> apply_adjoint(const AdjointMatrix& m, const Expr& mu,
                                const std::vector<Rat>& w);
// exact rational actions used by the optimal-system ladder
std::vector<Rat> apply_adjoint_rat(const AdjointMatrix& m, const Rat& mu,
                                   const std::vector<Rat>& w);
std::vector<Rat> apply_adjoint_scale(const AdjointMatrix& m, const Rat& s,
                                     const std::vector<Rat>& w);

std::string print(const ExpPoly& e); // rendered with the formal parameter mu

// Table of all Ad(exp(mu v_i)) v_j entries in two half-tables of five columns.
std::string latex_adjoint_table(const LieAlgebraTable& g);
std::string text_adjoint_table(const LieAlgebraTable& g);

} // namespace approxsym

#endif
