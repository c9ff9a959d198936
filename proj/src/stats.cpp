#include "tamarilab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tamarilab/rng.hpp"

namespace tamarilab {

namespace {

// Series expansion of P(a,x), valid and fast for x < a+1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a,x), for x >= a+1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi2_pvalue(double stat, int dof) {
    if (dof <= 0) throw std::invalid_argument("chi2_pvalue: nonpositive dof");
    if (stat <= 0.0) return 1.0;
    return gamma_q(0.5 * dof, 0.5 * stat);
}

double chi2_equal_cells(const std::vector<std::uint64_t>& counts) {
    if (counts.empty()) throw std::invalid_argument("chi2_equal_cells: no cells");
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    if (expected <= 0.0) throw std::invalid_argument("chi2_equal_cells: empty sample");
    double stat = 0.0;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return stat;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    // Asymptotic Kolmogorov tail with the effective-size correction.
    const double ne = std::sqrt(na * nb / (na + nb));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    double p = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * lambda * lambda * k * k);
        p += 2.0 * sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    p = std::clamp(p, 0.0, 1.0);
    return {d, p};
}

double sample_moment(const std::vector<double>& xs, int k) {
    if (xs.empty()) throw std::invalid_argument("sample_moment: empty sample");
    double acc = 0.0;
    for (double x : xs) acc += std::pow(x, k);
    return acc / static_cast<double>(xs.size());
}

MomentGap moment_gap(const std::vector<double>& xs, int k, double reference,
                     int bootstrap_rounds, std::uint64_t seed) {
    if (reference == 0.0) throw std::invalid_argument("moment_gap: zero reference");
    const double m = sample_moment(xs, k);
    std::vector<double> boots;
    boots.reserve(static_cast<std::size_t>(bootstrap_rounds));
    Rng rng(seed);
    std::vector<double> resample(xs.size());
    for (int r = 0; r < bootstrap_rounds; ++r) {
        for (auto& v : resample) v = xs[static_cast<std::size_t>(rng.below(xs.size()))];
        boots.push_back(sample_moment(resample, k));
    }
    std::sort(boots.begin(), boots.end());
    auto pick = [&](double q) {
        const auto idx = static_cast<std::size_t>(q * static_cast<double>(boots.size() - 1));
        return boots[idx];
    };
    return {k, m, reference, std::fabs(m / reference - 1.0),
            boots.empty() ? m : pick(0.025), boots.empty() ? m : pick(0.975)};
}

}  // namespace tamarilab
