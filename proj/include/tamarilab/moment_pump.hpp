#pragma once

// Moment pumping. An algebraic functional equation makes the factorial-moment
// series f^(k)(t) = (d/ds)^k f(t,s)|_{s=1} D-finite in the height variable,
// so they satisfy a lag-L linear recurrence f^(k) = sum_d h_d(t,k) f^(k-d).
// Near the dominant singularity rho each series behaves like
// c_k (1 - t/rho)^(alpha - beta k), and the recurrence collapses onto the
// constants: c_k = sum_d a_d(k) c_{k-d}, where a_d(k) is the limit of
// h_d(t,k) (1 - t/rho)^(beta d). The Flajolet-Odlyzko transfer theorem then
// converts the c_k into scaled limit moments,
//   E[(X_n)^k] / n^(beta k)  ->  c_k Gamma(-alpha) / (c_0 Gamma(beta k - alpha)).
//
// The engine is generic over (L, alpha, beta, rho, a_d, initial constants).
// Built-in instances: the height of a marked point on a uniform Dyck path
// (Rayleigh limit), and the upper/lower path heights at a uniform abscissa of
// a uniform Tamari interval. All their constants live in the radical field
// Q(2^(1/4), 3^(1/4), sqrt(pi)), which SymReal models exactly; a float shadow
// rides along through every operation as an arithmetic cross-check.

#include <map>
#include <string>
#include <vector>

#include "tamarilab/bigfloat.hpp"
#include "tamarilab/rational.hpp"

namespace tamarilab {

// Exact radical-field element: a rational combination of monomials
// 2^(a/4) * 3^(b/4) * pi^(p/2) with a, b normalized into 0..3 (whole powers
// carry into the rational coefficient) and p unbounded. The shadow is kept by
// plain 256-bit float arithmetic, independently of the exact terms, so
// shadow_agrees() catches a divergence on either side.
class SymReal {
public:
    struct Radical {
        int two4 = 0;    // exponent of 2, in quarters, normalized to 0..3
        int three4 = 0;  // exponent of 3, in quarters, normalized to 0..3
        int pihalf = 0;  // exponent of pi, in halves
        auto operator<=>(const Radical&) const = default;
    };

    SymReal() = default;  // zero
    static SymReal from_rat(const BigRat& q);
    static SymReal term(const BigRat& coeff, int two4, int three4, int pihalf = 0);

    friend SymReal operator+(const SymReal& a, const SymReal& b);
    friend SymReal operator-(const SymReal& a, const SymReal& b);
    friend SymReal operator*(const SymReal& a, const SymReal& b);
    SymReal operator-() const;
    SymReal scaled_by(const BigRat& q) const;
    // Division by a single-term SymReal (all the recurrences need); throws
    // std::domain_error on zero and std::invalid_argument on a multi-term
    // divisor.
    SymReal divided_by(const SymReal& d) const;

    // Exact comparison; shadows are derived data and do not participate.
    bool operator==(const SymReal& o) const { return terms_ == o.terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    BigRat rational_value() const;  // throws unless is_rational()

    // Fresh evaluation of the exact terms, vs. the shadow accumulated by
    // float arithmetic along the computation.
    BigFloat exact_float() const;
    const BigFloat& shadow() const { return shadow_; }
    bool shadow_agrees(int digits = 30) const;

    // "-32/27*2^(1/2)*3^(1/2)", "pi^(-1/2)", "0"; exponents printed reduced.
    std::string str() const;

    const std::map<Radical, BigRat>& terms() const { return terms_; }

private:
    std::map<Radical, BigRat> terms_;
    BigFloat shadow_;
};

// Polynomial in the moment index k, ascending powers, SymReal coefficients.
struct KPoly {
    std::vector<SymReal> coeff;
    SymReal eval(long k) const;
    bool operator==(const KPoly&) const = default;
};

// Rational function of k. The denominator must evaluate to a single radical
// term (a plain rational like 96 in practice) since SymReal division is
// monomial-only; empty denominator means 1.
struct KRational {
    KPoly num;
    KPoly den;
    SymReal eval(long k) const;
    bool operator==(const KRational&) const = default;
};

struct PumpSpec {
    std::string name;
    int L = 0;                    // recurrence lag
    BigRat alpha;                 // singular exponent of f^(0)
    BigRat beta;                  // scaling exponent: moments grow like n^(beta k)
    BigRat rho;                   // dominant singularity location
    std::vector<KRational> a;     // a[d-1] is the lag-d coefficient a_d(k)
    std::vector<SymReal> c_init;  // c_0 .. c_{ell0}

    // Index of the last supplied constant: L + max(floor(alpha/beta), -1).
    long ell0() const;
    // Throws std::invalid_argument on a broken spec: needs beta > 0, rho > 0,
    // c_0 != 0, alpha not a natural number, exactly ell0()+1 initial
    // constants, and c_l = 0 wherever alpha - beta*l lands in N (those slots
    // belong to the analytic part of the expansion).
    void validate() const;

    bool operator==(const PumpSpec&) const = default;
};

// c_0..c_{k_max}: the supplied constants verbatim, then the recurrence
// c_k = sum_{d=1..L} a_d(k) c_{k-d}. Exact arithmetic; every produced value's
// float shadow must agree to 30 digits or the pump aborts.
std::vector<SymReal> pump(const PumpSpec& spec, int k_max);

// Scaled limit moments E[(X_n)^k] / n^(beta k) -> c_k Gamma(-alpha) /
// (c_0 Gamma(beta k - alpha)) for k = 0..k_max. The raw and factorial limits
// coincide at this scaling: expanding E[X^k] over falling factorials by the
// Stirling triangular relation, every j < k term carries n^(beta (j-k)) -> 0,
// which the implementation asserts term by term before dropping. Throws
// std::domain_error if beta*k - alpha hits a pole of Gamma (impossible for
// the built-in instances, reachable by user specs).
std::vector<BigFloat> limit_moments(const PumpSpec& spec, int k_max);

// Leading-order transfer prediction of the n-th coefficient of f^(k):
// c_k / Gamma(beta k - alpha) * n^(beta k - alpha - 1) * rho^(-n). For k = 0
// this approximates the counting sequence itself (relative error O(1/n)).
BigFloat predict_finite_n(const PumpSpec& spec, int k, long n);

// Height of a uniformly marked point on a uniform Dyck path: L = 2,
// a_2 = k(k-1)/4, alpha = -1/2, beta = 1/2, rho = 1/4, c_0 = 2, c_1 = 1.
// Pumps to c_k = 2^(1-k) k!, the moments of a Rayleigh(1/sqrt 2) limit.
PumpSpec dyck_instance();

// The same equation driven at the suboptimal scale beta = 3/4: every a_d
// limit vanishes, so all positive moments of H_n / n^(3/4) tend to zero.
PumpSpec dyck_instance_beta34();

// Upper-path height at a uniform abscissa of a uniform Tamari interval:
// L = 6, a_2 = sqrt(6)(3k-4)(3k-8)/96 (other lags vanish), alpha = 1/2,
// beta = 3/4, rho = 27/256, and seven initial constants starting at
// c_0 = -32 sqrt(6)/27 (negative: the counting series' singular term enters
// with exponent +1/2, and Gamma(-1/2) < 0 restores positive coefficients).
PumpSpec upper_path_instance();

// Lower-path height, same singularity data with L = 9 and the lag-2
// coefficient scaled by 1/9; its constants are exactly 3^(-k) times the
// upper-path ones, matching the limit law scaled by 1/3.
PumpSpec lower_path_instance();

// Independent closed form for the upper instance,
//   c_k = 16/27 * Gamma(k/2 + 1/3) Gamma(k/2 - 1/3) sqrt(2) 4^(-k) 6^(3k/4) / pi,
// evaluated exactly in the radical field via the Gamma recurrence and the
// reflection values Gamma(1/3)Gamma(2/3) = 2 pi / sqrt(3) and
// Gamma(1/6)Gamma(5/6) = 2 pi. Oracle for pump(), not used by it.
SymReal upper_ck_closed_form(int k);

// CSV rows "instance,k,c_exact,c_float,limit_moment", with a header line.
std::string pump_csv(const PumpSpec& spec, int k_max);

// JSON (de)serialization, so new pumps can be defined without recompiling;
// parsing validates the spec.
std::string pump_spec_json(const PumpSpec& spec);
PumpSpec pump_spec_from_json(const std::string& text);

}  // namespace tamarilab
