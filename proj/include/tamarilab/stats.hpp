#pragma once

// Small statistical helpers for the randomized acceptance checks: chi-squared
// goodness of fit, two-sample Kolmogorov-Smirnov, and moment gaps with
// bootstrap confidence intervals. Double precision is plenty here; these
// guard Monte Carlo pipelines, not exact identities.

#include <cstdint>
#include <vector>

namespace tamarilab {

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x),
// series for x < a+1 and Lentz continued fraction otherwise (the classical
// split, cf. Abramowitz & Stegun 6.5 / Numerical Recipes gammp/gammq).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Upper tail of the chi-squared distribution with `dof` degrees of freedom.
double chi2_pvalue(double stat, int dof);

// Pearson statistic against equal expected counts; counts must be nonempty.
double chi2_equal_cells(const std::vector<std::uint64_t>& counts);

// Two-sample Kolmogorov-Smirnov: max CDF distance and the asymptotic p-value
// with the small-sample effective-size correction.
struct KsResult {
    double statistic;
    double p_value;
};
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// k-th raw sample moment.
double sample_moment(const std::vector<double>& xs, int k);

// Relative gap |m_hat/m_ref - 1| of the k-th sample moment against a
// reference, with a percentile bootstrap confidence interval on the gap.
struct MomentGap {
    int k;
    double sample;
    double reference;
    double rel_gap;
    double ci_lo, ci_hi;  // bootstrap interval for the sample moment itself
};
MomentGap moment_gap(const std::vector<double>& xs, int k, double reference,
                     int bootstrap_rounds, std::uint64_t seed);

}  // namespace tamarilab
