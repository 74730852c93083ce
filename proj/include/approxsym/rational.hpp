#ifndef APPROXSYM_RATIONAL_HPP
#define APPROXSYM_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace approxsym {

// Exact rational scalar. mpq_class keeps gcd(num,den)=1 and den>0 for all
// arithmetic results; only raw num/den assignment needs explicit
// canonicalization, which rat_parse takes care of.
using Rat = mpq_class;
using Int = mpz_class;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline Rat rat(long n, long d = 1) {
    Rat q(n, d);
    q.canonicalize();
    return q;
}

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

inline bool rat_sign_positive(const Rat& q) { return sgn(q) > 0; }

// "p" or "p/q", matching the grammar's rational token.
inline std::string rat_str(const Rat& q) { return q.get_str(); }

Rat rat_parse(const std::string& s);

// q^e for integer e (e may be negative; q must be nonzero then).
Rat rat_pow(const Rat& q, long e);

// Exact k-th root of a nonnegative rational if it exists.
bool rat_root(const Rat& q, unsigned long k, Rat& out);

inline Rat rat_parse(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw Error("bad rational literal: " + s);
    if (q.get_den() == 0) throw Error("zero denominator in rational literal: " + s);
    q.canonicalize();
    return q;
}

inline Rat rat_pow(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    if (q == 0 && e < 0) throw Error("division by zero");
    Rat base = e > 0 ? q : Rat(1) / q;
    unsigned long n = e > 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-e);
    Rat acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

inline bool rat_root(const Rat& q, unsigned long k, Rat& out) {
    if (sgn(q) < 0) return false;
    Int nr, dr;
    if (mpz_root(nr.get_mpz_t(), q.get_num().get_mpz_t(), k) == 0) return false;
    if (mpz_root(dr.get_mpz_t(), q.get_den().get_mpz_t(), k) == 0) return false;
    out = Rat(nr, dr);
    out.canonicalize();
    return true;
}

} // namespace approxsym

#endif
