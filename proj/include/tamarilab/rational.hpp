#pragma once

// Exact integer / rational scalars. GMP does the heavy lifting; this header
// only adds the small conveniences the rest of the library needs (canonical
// construction, binomials, parsing and printing in "num/den" form).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tamarilab {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Canonical rational: lowest terms, positive denominator. mpq_class does not
// canonicalize two-argument constructions on its own.
inline BigRat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

inline BigRat make_rat(long num, long den) {
    return make_rat(BigInt(num), BigInt(den));
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigInt binomial(const BigInt& n, unsigned long k) {
    BigInt r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline BigInt pow_int(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// base^e for signed e; e < 0 requires base != 0.
inline BigRat pow_rat(const BigRat& base, long e) {
    if (e == 0) return BigRat(1);
    if (base == 0 && e < 0) throw std::domain_error("pow_rat: 0^negative");
    const unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    BigInt num = pow_int(BigInt(base.get_num()), a);
    BigInt den = pow_int(BigInt(base.get_den()), a);
    return e > 0 ? make_rat(num, den) : make_rat(den, num);
}

inline bool is_integer(const BigRat& q) { return q.get_den() == 1; }

// "7" for integers, "-3/4" otherwise. mpq_class already prints this way, but
// keep the name explicit since CSV columns depend on it.
inline std::string rat_string(const BigRat& q) { return q.get_str(); }

// Accepts "a", "a/b", with optional leading '-'.
inline BigRat parse_rat(const std::string& s) {
    BigRat q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0)
        throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
    q.canonicalize();
    return q;
}

inline double to_double(const BigRat& q) { return q.get_d(); }

}  // namespace tamarilab
