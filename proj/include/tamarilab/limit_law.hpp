#pragma once

// The limit random variable Z = (XY)^(1/4) with X ~ Beta(1/3, 1/6) and
// Y ~ Gamma(2/3, theta = 1/2) independent: the upper-path height of a
// uniform Tamari interval at a uniform abscissa, rescaled by n^(3/4),
// converges to Z in law and in all moments; the lower-path height converges
// to Z/3. Exact moments come from the Gamma quotient forms
//   E[X^s] = G(a+b) G(a+s) / (G(a) G(a+b+s)),
//   E[Y^s] = theta^s G(l+s) / G(l),
// valid for fractional s as well, so E[Z^k] needs no integer-divisibility
// case split. Sampling goes through standard Beta/Gamma schemes; empirical
// comparisons report a two-sample KS statistic and bootstrapped moment gaps.

#include <cstdint>
#include <string>
#include <vector>

#include "tamarilab/bigfloat.hpp"
#include "tamarilab/rational.hpp"
#include "tamarilab/rng.hpp"
#include "tamarilab/stats.hpp"

namespace tamarilab {

struct LimitLawSpec {
    BigRat beta_a = make_rat(1, 3);
    BigRat beta_b = make_rat(1, 6);
    BigRat gamma_shape = make_rat(2, 3);
    BigRat gamma_theta = make_rat(1, 2);
    BigRat exponent = make_rat(1, 4);  // Z = (XY)^exponent
    BigRat scale = BigRat(1);          // 1 for the upper path, 1/3 for the lower

    static LimitLawSpec upper() { return {}; }
    static LimitLawSpec lower();

    // All parameters must be positive; throws std::invalid_argument.
    void validate() const;
};

// Fractional moment E[X^s] of Beta(a, b), s > -a.
BigFloat beta_moment(const BigRat& a, const BigRat& b, const BigRat& s);

// Fractional moment E[Y^s] of Gamma(shape, theta), s > -shape.
BigFloat gamma_moment(const BigRat& shape, const BigRat& theta, const BigRat& s);

// E[(scale Z)^k] for integer k >= 0, via the product of fractional Beta and
// Gamma moments at s = k/4. For the standard parameters this is exactly the
// closed Gamma form of the limit (the reflection value G(1/3)G(2/3) =
// 2 pi / sqrt(3) collapses the product onto it), which the tests pin against
// an independently coded oracle.
BigFloat z_moment(const LimitLawSpec& law, int k);

// Standard normal via Box-Muller (the cosine half; one uniform pair per
// draw, no cached state).
double sample_gauss(Rng& rng);

// Gamma(shape, 1). Marsaglia and Tsang (2000) squeeze for shape >= 1;
// below 1 their boost Gamma(a) = Gamma(a+1) U^(1/a), which is exact and
// keeps the rejection constant close to 1 for the shapes 1/3, 1/6, 2/3
// used here.
double sample_gamma(Rng& rng, double shape);

// Beta(a, b) as X / (X + Y) with independent Gamma(a, 1), Gamma(b, 1).
double sample_beta(Rng& rng, double a, double b);

// n_samples i.i.d. draws of scale (XY)^exponent under the law's parameters.
std::vector<double> sample_z(const LimitLawSpec& law, Rng& rng, std::size_t n_samples);

// Two-sample or sample-vs-exact-moments comparison: KS statistic (only in
// the two-sample form) plus the first four raw moment gaps, each with a
// percentile-bootstrap confidence interval for the sample moment.
struct EmpiricalReport {
    std::size_t n_a = 0;
    std::size_t n_b = 0;  // 0 when the reference is a moment list
    bool has_ks = false;
    KsResult ks{0.0, 0.0};
    std::vector<MomentGap> gaps;  // k = 1..4
};

EmpiricalReport compare_empirical(const std::vector<double>& samples,
                                  const std::vector<double>& reference_samples,
                                  int bootstrap_rounds, std::uint64_t seed);

// reference_moments[k] = exact k-th moment, indexed 0..4 at least.
EmpiricalReport compare_empirical(const std::vector<double>& samples,
                                  const std::vector<BigFloat>& reference_moments,
                                  int bootstrap_rounds, std::uint64_t seed);

std::string report_json(const EmpiricalReport& report);

// "i,z" header, one indexed row per draw, full double precision.
std::string samples_csv(const std::vector<double>& samples);

}  // namespace tamarilab
