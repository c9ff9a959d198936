#include "tamarilab/limit_law.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace tamarilab {

LimitLawSpec LimitLawSpec::lower() {
    LimitLawSpec s;
    s.scale = make_rat(1, 3);
    return s;
}

void LimitLawSpec::validate() const {
    if (!(beta_a > 0 && beta_b > 0 && gamma_shape > 0 && gamma_theta > 0 && exponent > 0 &&
          scale > 0))
        throw std::invalid_argument("LimitLawSpec: all parameters must be positive");
}

BigFloat beta_moment(const BigRat& a, const BigRat& b, const BigRat& s) {
    const BigFloat ga = BigFloat(a).gamma();
    const BigFloat gab = BigFloat(BigRat(a + b)).gamma();
    const BigFloat gas = BigFloat(BigRat(a + s)).gamma();
    const BigFloat gabs = BigFloat(BigRat(a + b + s)).gamma();
    return gab * gas / (ga * gabs);
}

BigFloat gamma_moment(const BigRat& shape, const BigRat& theta, const BigRat& s) {
    const BigFloat theta_pow = BigFloat(theta).pow(BigFloat(s));
    return theta_pow * BigFloat(BigRat(shape + s)).gamma() / BigFloat(shape).gamma();
}

BigFloat z_moment(const LimitLawSpec& law, int k) {
    law.validate();
    if (k < 0) throw std::invalid_argument("z_moment: k must be nonnegative");
    const BigRat s = law.exponent * k;
    return BigFloat(pow_rat(law.scale, k)) * beta_moment(law.beta_a, law.beta_b, s) *
           gamma_moment(law.gamma_shape, law.gamma_theta, s);
}

double sample_gauss(Rng& rng) {
    const double u1 = 1.0 - rng.uniform01();  // (0, 1]: keeps the log finite
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_gamma(Rng& rng, double shape) {
    if (!(shape > 0)) throw std::invalid_argument("sample_gamma: shape must be positive");
    if (shape < 1.0) {
        // Gamma(a) = Gamma(a+1) U^(1/a), the boost from the Marsaglia-Tsang
        // paper; exact, and cheaper than tuning a separate sub-1 sampler.
        const double u = 1.0 - rng.uniform01();
        return sample_gamma(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = sample_gauss(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;  // squeeze accept
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_beta(Rng& rng, double a, double b) {
    const double x = sample_gamma(rng, a);
    const double y = sample_gamma(rng, b);
    return x / (x + y);
}

std::vector<double> sample_z(const LimitLawSpec& law, Rng& rng, std::size_t n_samples) {
    law.validate();
    const double a = to_double(law.beta_a);
    const double b = to_double(law.beta_b);
    const double shape = to_double(law.gamma_shape);
    const double theta = to_double(law.gamma_theta);
    const double expo = to_double(law.exponent);
    const double scale = to_double(law.scale);
    std::vector<double> out;
    out.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double x = sample_beta(rng, a, b);
        const double y = theta * sample_gamma(rng, shape);
        out.push_back(scale * std::pow(x * y, expo));
    }
    return out;
}

namespace {

std::vector<MomentGap> gaps_against(const std::vector<double>& samples,
                                    const std::vector<double>& references, int bootstrap_rounds,
                                    std::uint64_t seed) {
    std::vector<MomentGap> gaps;
    for (int k = 1; k <= 4; ++k)
        gaps.push_back(moment_gap(samples, k, references[static_cast<std::size_t>(k - 1)],
                                  bootstrap_rounds, seed + static_cast<std::uint64_t>(k)));
    return gaps;
}

}  // namespace

EmpiricalReport compare_empirical(const std::vector<double>& samples,
                                  const std::vector<double>& reference_samples,
                                  int bootstrap_rounds, std::uint64_t seed) {
    if (samples.empty() || reference_samples.empty())
        throw std::invalid_argument("compare_empirical: empty samples");
    EmpiricalReport r;
    r.n_a = samples.size();
    r.n_b = reference_samples.size();
    r.has_ks = true;
    r.ks = ks_two_sample(samples, reference_samples);
    std::vector<double> refs;
    for (int k = 1; k <= 4; ++k) refs.push_back(sample_moment(reference_samples, k));
    r.gaps = gaps_against(samples, refs, bootstrap_rounds, seed);
    return r;
}

EmpiricalReport compare_empirical(const std::vector<double>& samples,
                                  const std::vector<BigFloat>& reference_moments,
                                  int bootstrap_rounds, std::uint64_t seed) {
    if (samples.empty()) throw std::invalid_argument("compare_empirical: empty samples");
    if (reference_moments.size() < 5)
        throw std::invalid_argument("compare_empirical: need reference moments up to k = 4");
    EmpiricalReport r;
    r.n_a = samples.size();
    std::vector<double> refs;
    for (int k = 1; k <= 4; ++k) refs.push_back(reference_moments[static_cast<std::size_t>(k)].to_double());
    r.gaps = gaps_against(samples, refs, bootstrap_rounds, seed);
    return r;
}

std::string report_json(const EmpiricalReport& report) {
    nlohmann::json j;
    j["n_a"] = report.n_a;
    j["n_b"] = report.n_b;
    if (report.has_ks)
        j["ks"] = {{"statistic", report.ks.statistic}, {"p_value", report.ks.p_value}};
    else
        j["ks"] = nullptr;
    nlohmann::json gaps = nlohmann::json::array();
    for (const MomentGap& g : report.gaps)
        gaps.push_back({{"k", g.k},
                        {"sample", g.sample},
                        {"reference", g.reference},
                        {"rel_gap", g.rel_gap},
                        {"ci_lo", g.ci_lo},
                        {"ci_hi", g.ci_hi}});
    j["moment_gaps"] = gaps;
    return j.dump(1);
}

std::string samples_csv(const std::vector<double>& samples) {
    std::string out = "i,z\n";
    char buf[64];
    for (std::size_t i = 0; i < samples.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, samples[i]);
        out += buf;
    }
    return out;
}

}  // namespace tamarilab
