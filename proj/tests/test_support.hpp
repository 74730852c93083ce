#ifndef APPROXSYM_TEST_SUPPORT_HPP
#define APPROXSYM_TEST_SUPPORT_HPP

#include <random>
#include <vector>

#include "approxsym/expr.hpp"

namespace approxsym::testing {

// Deterministic generator for randomized property suites; seed 0 everywhere.
class Gen {
  public:
    explicit Gen(unsigned seed = 0) : rng_(seed) {}

    Rat small_rat(int lo = -9, int hi = 9) {
        std::uniform_int_distribution<int> n(lo, hi);
        std::uniform_int_distribution<int> d(1, 3);
        return rat(n(rng_), d(rng_));
    }

    Rat nonzero_rat(int lo = -9, int hi = 9) {
        for (;;) {
            Rat q = small_rat(lo, hi);
            if (q != 0) return q;
        }
    }

    int uniform(int lo, int hi) {
        std::uniform_int_distribution<int> d(lo, hi);
        return d(rng_);
    }

    // random polynomial over the given symbols, small degrees and coefficients
    Expr poly_expr(const std::vector<Symbol>& syms, int max_terms = 4, int max_deg = 2) {
        Expr acc;
        int terms = uniform(1, max_terms);
        for (int i = 0; i < terms; ++i) {
            Expr term(small_rat());
            for (const auto& s : syms) {
                int e = uniform(0, max_deg);
                if (e > 0) term = term * Expr(s).pow(Rat(e));
            }
            acc = acc + term;
        }
        return acc;
    }

    // rational-class expression: quotient of small polynomials
    Expr rational_expr(const std::vector<Symbol>& syms) {
        Expr n = poly_expr(syms);
        for (;;) {
            Expr d = poly_expr(syms, 2, 1);
            if (!d.is_zero()) return n / d;
        }
    }

    std::mt19937_64& rng() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

} // namespace approxsym::testing

#endif
