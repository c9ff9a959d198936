#pragma once

// Fixed-precision big floats on top of MPFR. 256 bits of mantissa gives about
// 77 decimal digits, comfortably above the 30- and 50-digit agreement checks
// used throughout the verification suites.

#include <mpfr.h>

#include <string>

#include "tamarilab/rational.hpp"

namespace tamarilab {

class BigFloat {
public:
    static constexpr mpfr_prec_t kPrec = 256;

    BigFloat() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
    explicit BigFloat(double d) { mpfr_init2(v_, kPrec); mpfr_set_d(v_, d, MPFR_RNDN); }
    explicit BigFloat(long n) { mpfr_init2(v_, kPrec); mpfr_set_si(v_, n, MPFR_RNDN); }
    explicit BigFloat(int n) : BigFloat(static_cast<long>(n)) {}
    explicit BigFloat(const BigInt& n) { mpfr_init2(v_, kPrec); mpfr_set_z(v_, n.get_mpz_t(), MPFR_RNDN); }
    explicit BigFloat(const BigRat& q) { mpfr_init2(v_, kPrec); mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }

    BigFloat(const BigFloat& o) { mpfr_init2(v_, kPrec); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, kPrec); mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat pi() { BigFloat r; mpfr_const_pi(r.v_, MPFR_RNDN); return r; }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { BigFloat r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { BigFloat r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { BigFloat r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { BigFloat r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    BigFloat operator-() const { BigFloat r; mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

    BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    BigFloat gamma() const { BigFloat r; mpfr_gamma(r.v_, v_, MPFR_RNDN); return r; }
    BigFloat ln() const { BigFloat r; mpfr_log(r.v_, v_, MPFR_RNDN); return r; }
    BigFloat exp() const { BigFloat r; mpfr_exp(r.v_, v_, MPFR_RNDN); return r; }
    BigFloat sqrt() const { BigFloat r; mpfr_sqrt(r.v_, v_, MPFR_RNDN); return r; }
    BigFloat abs() const { BigFloat r; mpfr_abs(r.v_, v_, MPFR_RNDN); return r; }
    // a.pow(b) = a^b; also an integer-exponent form that is exact for bases of
    // either sign.
    BigFloat pow(const BigFloat& e) const { BigFloat r; mpfr_pow(r.v_, v_, e.v_, MPFR_RNDN); return r; }
    BigFloat pow_si(long e) const { BigFloat r; mpfr_pow_si(r.v_, v_, e, MPFR_RNDN); return r; }

    int sign() const { return mpfr_sgn(v_); }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return a.cmp(b) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return a.cmp(b) > 0; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string str(int digits = 30) const;

    // Relative agreement to `digits` significant decimal digits:
    // |a-b| <= max(|a|,|b|) * 10^-digits. Both exactly zero also agrees.
    static bool agree_digits(const BigFloat& a, const BigFloat& b, int digits);

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    mpfr_t v_;
};

}  // namespace tamarilab
