#include "tamarilab/moment_pump.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tamarilab {

namespace {

const BigFloat& root4_two() {
    static const BigFloat r = BigFloat(2).pow(BigFloat(make_rat(1, 4)));
    return r;
}

const BigFloat& root4_three() {
    static const BigFloat r = BigFloat(3).pow(BigFloat(make_rat(1, 4)));
    return r;
}

const BigFloat& sqrt_pi() {
    static const BigFloat r = BigFloat::pi().sqrt();
    return r;
}

std::string quarter_exponent(int q) {
    switch (q) {
        case 1: return "^(1/4)";
        case 2: return "^(1/2)";
        default: return "^(3/4)";
    }
}

std::string radical_suffix(const SymReal::Radical& key) {
    std::string out;
    if (key.two4 != 0) out += "2" + quarter_exponent(key.two4);
    if (key.three4 != 0) {
        if (!out.empty()) out += "*";
        out += "3" + quarter_exponent(key.three4);
    }
    if (key.pihalf != 0) {
        if (!out.empty()) out += "*";
        if (key.pihalf == 2)
            out += "pi";
        else
            out += "pi^(" + rat_string(make_rat(key.pihalf, 2)) + ")";
    }
    return out;
}

}  // namespace

SymReal SymReal::from_rat(const BigRat& q) { return term(q, 0, 0, 0); }

SymReal SymReal::term(const BigRat& coeff, int two4, int three4, int pihalf) {
    SymReal s;
    if (coeff == 0) return s;
    BigRat c = coeff;
    while (two4 < 0) { two4 += 4; c /= 2; }
    while (two4 >= 4) { two4 -= 4; c *= 2; }
    while (three4 < 0) { three4 += 4; c /= 3; }
    while (three4 >= 4) { three4 -= 4; c *= 3; }
    s.terms_[Radical{two4, three4, pihalf}] = c;
    s.shadow_ = s.exact_float();
    return s;
}

SymReal operator+(const SymReal& a, const SymReal& b) {
    SymReal r = a;
    for (const auto& [key, val] : b.terms_) {
        auto it = r.terms_.find(key);
        if (it == r.terms_.end()) {
            r.terms_.emplace(key, val);
        } else {
            it->second += val;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    r.shadow_ = a.shadow_ + b.shadow_;
    return r;
}

SymReal operator-(const SymReal& a, const SymReal& b) {
    SymReal r = a + (-b);
    r.shadow_ = a.shadow_ - b.shadow_;
    return r;
}

SymReal operator*(const SymReal& a, const SymReal& b) {
    SymReal r;
    for (const auto& [ka, va] : a.terms_)
        for (const auto& [kb, vb] : b.terms_) {
            const SymReal t = SymReal::term(va * vb, ka.two4 + kb.two4, ka.three4 + kb.three4,
                                            ka.pihalf + kb.pihalf);
            for (const auto& [key, val] : t.terms_) {
                auto it = r.terms_.find(key);
                if (it == r.terms_.end()) {
                    r.terms_.emplace(key, val);
                } else {
                    it->second += val;
                    if (it->second == 0) r.terms_.erase(it);
                }
            }
        }
    r.shadow_ = a.shadow_ * b.shadow_;
    return r;
}

SymReal SymReal::operator-() const { return scaled_by(BigRat(-1)); }

SymReal SymReal::scaled_by(const BigRat& q) const {
    if (q == 0) return SymReal();
    SymReal r = *this;
    for (auto& [key, val] : r.terms_) val *= q;
    r.shadow_ = shadow_ * BigFloat(q);
    return r;
}

SymReal SymReal::divided_by(const SymReal& d) const {
    if (d.terms_.empty()) throw std::domain_error("SymReal: division by zero");
    if (d.terms_.size() > 1)
        throw std::invalid_argument("SymReal: can only divide by a single radical term");
    const auto& [key, val] = *d.terms_.begin();
    SymReal r = *this * term(BigRat(1) / val, -key.two4, -key.three4, -key.pihalf);
    r.shadow_ = shadow_ / d.shadow_;
    return r;
}

bool SymReal::is_rational() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == Radical{};
}

BigRat SymReal::rational_value() const {
    if (terms_.empty()) return BigRat(0);
    if (!is_rational()) throw std::logic_error("SymReal: not a rational value: " + str());
    return terms_.begin()->second;
}

BigFloat SymReal::exact_float() const {
    BigFloat sum;
    for (const auto& [key, val] : terms_)
        sum += BigFloat(val) * root4_two().pow_si(key.two4) * root4_three().pow_si(key.three4) *
               sqrt_pi().pow_si(key.pihalf);
    return sum;
}

bool SymReal::shadow_agrees(int digits) const {
    return BigFloat::agree_digits(shadow_, exact_float(), digits);
}

std::string SymReal::str() const {
    if (terms_.empty()) return "0";
    // Purely rational terms first, then positive pi powers before negative
    // ones; mostly cosmetic, but CSV regressions pin the result.
    std::vector<std::pair<Radical, BigRat>> sorted(terms_.begin(), terms_.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        auto rank = [](const Radical& k) {
            return std::tuple(k.two4, k.three4, k.pihalf >= 0 ? 2 * k.pihalf : -2 * k.pihalf + 1);
        };
        return rank(a.first) < rank(b.first);
    });
    std::string out;
    for (const auto& [key, val] : sorted) {
        const bool negative = val < 0;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        const BigRat mag = negative ? BigRat(-val) : val;
        const std::string rad = radical_suffix(key);
        if (rad.empty())
            out += rat_string(mag);
        else if (mag == 1)
            out += rad;
        else
            out += rat_string(mag) + "*" + rad;
    }
    return out;
}

SymReal KPoly::eval(long k) const {
    SymReal r;
    const SymReal kval = SymReal::from_rat(BigRat(k));
    for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) r = r * kval + *it;
    return r;
}

SymReal KRational::eval(long k) const {
    const SymReal n = num.eval(k);
    if (den.coeff.empty()) return n;
    return n.divided_by(den.eval(k));
}

long PumpSpec::ell0() const {
    if (beta == 0) throw std::invalid_argument("PumpSpec: beta must be positive");
    const BigRat q = alpha / beta;
    BigInt fl;
    const BigInt num(q.get_num());
    const BigInt den(q.get_den());
    mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return L + std::max(fl.get_si(), -1L);
}

void PumpSpec::validate() const {
    if (L < 1) throw std::invalid_argument("PumpSpec: recurrence lag L must be at least 1");
    if (static_cast<int>(a.size()) != L)
        throw std::invalid_argument("PumpSpec: need exactly L lag coefficients a_1..a_L");
    if (!(beta > 0)) throw std::invalid_argument("PumpSpec: beta must be positive");
    if (!(rho > 0)) throw std::invalid_argument("PumpSpec: rho must be positive");
    if (alpha >= 0 && is_integer(alpha))
        throw std::invalid_argument("PumpSpec: alpha must not be a natural number");
    const long l0 = ell0();
    if (static_cast<long>(c_init.size()) != l0 + 1)
        throw std::invalid_argument("PumpSpec: need exactly ell0+1 = " + std::to_string(l0 + 1) +
                                    " initial constants, got " + std::to_string(c_init.size()));
    if (c_init[0].is_zero()) throw std::invalid_argument("PumpSpec: c_0 must be nonzero");
    for (long l = 0; l <= l0; ++l) {
        // Exponents alpha - beta*l in N belong to the analytic part of the
        // expansion, so those constants are forced to zero.
        const BigRat e = alpha - beta * l;
        if (e >= 0 && is_integer(e) && !c_init[static_cast<std::size_t>(l)].is_zero())
            throw std::invalid_argument("PumpSpec: c_" + std::to_string(l) +
                                        " must vanish since alpha - beta*l is a natural number");
    }
}

std::vector<SymReal> pump(const PumpSpec& spec, int k_max) {
    spec.validate();
    if (k_max < 0) throw std::invalid_argument("pump: k_max must be nonnegative");
    std::vector<SymReal> c = spec.c_init;
    for (long k = spec.ell0() + 1; k <= k_max; ++k) {
        SymReal acc;
        for (int d = 1; d <= spec.L; ++d)
            acc = acc + spec.a[static_cast<std::size_t>(d - 1)].eval(k) *
                            c[static_cast<std::size_t>(k - d)];
        if (!acc.shadow_agrees(30))
            throw std::logic_error("pump: float shadow diverged from the exact value at k=" +
                                   std::to_string(k));
        c.push_back(acc);
    }
    c.resize(static_cast<std::size_t>(k_max) + 1);
    return c;
}

std::vector<BigFloat> limit_moments(const PumpSpec& spec, int k_max) {
    const std::vector<SymReal> c = pump(spec, k_max);
    const BigFloat gamma_neg_alpha = BigFloat(BigRat(-spec.alpha)).gamma();
    const BigFloat c0 = c[0].exact_float();
    std::vector<BigFloat> out;
    out.reserve(c.size());
    for (int k = 0; k <= k_max; ++k) {
        const BigRat arg = spec.beta * k - spec.alpha;
        if (arg <= 0 && is_integer(arg))
            throw std::domain_error("limit_moments: Gamma pole at beta*k - alpha = " +
                                    rat_string(arg) + " (k=" + std::to_string(k) + ")");
        // Raw moments expand over falling factorials through the Stirling
        // triangular relation E[X^k] = sum_{j<=k} S(k,j) E[(X)_(j)]; under
        // the n^(beta k) scaling the j-th term carries n^(beta (j-k)), so
        // only j = k survives (S(k,k) = 1) and the raw and factorial limits
        // coincide. Check the vanishing exponents before relying on it.
        for (int j = 0; j < k; ++j)
            if (!(spec.beta * (k - j) > 0))
                throw std::logic_error("limit_moments: a lower factorial term would not vanish");
        out.push_back(c[static_cast<std::size_t>(k)].exact_float() * gamma_neg_alpha /
                      (c0 * BigFloat(arg).gamma()));
    }
    return out;
}

BigFloat predict_finite_n(const PumpSpec& spec, int k, long n) {
    if (k < 0) throw std::invalid_argument("predict_finite_n: k must be nonnegative");
    if (n < 1) throw std::invalid_argument("predict_finite_n: n must be positive");
    const std::vector<SymReal> c = pump(spec, k);
    const BigRat arg = spec.beta * k - spec.alpha;  // = -(alpha - beta k)
    // On a Gamma pole the 1/Gamma factor vanishes: the leading-order
    // prediction is flat zero rather than an error.
    if (arg <= 0 && is_integer(arg)) return BigFloat();
    const BigFloat n_pow = BigFloat(n).pow(BigFloat(BigRat(arg - 1)));
    const BigFloat rho_pow = BigFloat(spec.rho).pow_si(-n);
    return c[static_cast<std::size_t>(k)].exact_float() / BigFloat(arg).gamma() * n_pow * rho_pow;
}

PumpSpec dyck_instance() {
    PumpSpec s;
    s.name = "dyck";
    s.L = 2;
    s.alpha = make_rat(-1, 2);
    s.beta = make_rat(1, 2);
    s.rho = make_rat(1, 4);
    s.a.resize(2);
    // a_1 = 0, a_2 = k(k-1)/4.
    s.a[1].num.coeff = {SymReal(), SymReal::from_rat(BigRat(-1)), SymReal::from_rat(BigRat(1))};
    s.a[1].den.coeff = {SymReal::from_rat(BigRat(4))};
    s.c_init = {SymReal::from_rat(BigRat(2)), SymReal::from_rat(BigRat(1))};
    return s;
}

PumpSpec dyck_instance_beta34() {
    PumpSpec s = dyck_instance();
    s.name = "dyck-beta-3/4";
    s.beta = make_rat(3, 4);
    // Every h_d(t,k) (1 - 4t)^(3d/4) limit vanishes at this scale, and so do
    // the positive-moment constants.
    s.a.assign(2, KRational{});
    s.c_init = {SymReal::from_rat(BigRat(2)), SymReal()};
    return s;
}

PumpSpec upper_path_instance() {
    PumpSpec s;
    s.name = "upper";
    s.L = 6;
    s.alpha = make_rat(1, 2);
    s.beta = make_rat(3, 4);
    s.rho = make_rat(27, 256);
    s.a.resize(6);
    // Only the lag-2 limit survives: a_2 = sqrt(6) (3k-4)(3k-8) / 96.
    s.a[1].num.coeff = {SymReal::term(BigRat(32), 2, 2), SymReal::term(BigRat(-36), 2, 2),
                        SymReal::term(BigRat(9), 2, 2)};
    s.a[1].den.coeff = {SymReal::from_rat(BigRat(96))};
    s.c_init = {SymReal::term(make_rat(-32, 27), 2, 2), SymReal::term(make_rat(16, 27), 1, 3),
                SymReal::from_rat(make_rat(8, 27)),     SymReal::term(make_rat(5, 54), 3, 1),
                SymReal::term(make_rat(8, 81), 2, 2),   SymReal::term(make_rat(385, 2592), 1, 3),
                SymReal::from_rat(make_rat(70, 81))};
    return s;
}

PumpSpec lower_path_instance() {
    PumpSpec s;
    s.name = "lower";
    s.L = 9;
    s.alpha = make_rat(1, 2);
    s.beta = make_rat(3, 4);
    s.rho = make_rat(27, 256);
    s.a.resize(9);
    // a_2 = sqrt(6) (3k-4)(3k-8) / 864, one ninth of the upper-path value.
    s.a[1].num.coeff = {SymReal::term(BigRat(32), 2, 2), SymReal::term(BigRat(-36), 2, 2),
                        SymReal::term(BigRat(9), 2, 2)};
    s.a[1].den.coeff = {SymReal::from_rat(BigRat(864))};
    s.c_init = {SymReal::term(make_rat(-32, 27), 2, 2),
                SymReal::term(make_rat(16, 81), 1, 3),
                SymReal::from_rat(make_rat(8, 243)),
                SymReal::term(make_rat(5, 1458), 3, 1),
                SymReal::term(make_rat(8, 6561), 2, 2),
                SymReal::term(make_rat(385, 629856), 1, 3),
                SymReal::from_rat(make_rat(70, 59049)),
                SymReal::term(make_rat(85085, 181398528), 3, 1),
                SymReal::term(make_rat(700, 1594323), 2, 2),
                SymReal::term(make_rat(37182145, 78364164096), 1, 3)};
    return s;
}

SymReal upper_ck_closed_form(int k) {
    if (k < 0) throw std::invalid_argument("upper_ck_closed_form: k must be nonnegative");
    // 6^(3k/4), whole part peeled into the rational coefficient.
    const long q = 3L * k;
    const BigRat six_whole(pow_int(BigInt(6), static_cast<unsigned long>(q / 4)));
    const int rem = static_cast<int>(q % 4);
    const BigRat four_pow = pow_rat(make_rat(1, 4), k);
    if (k % 2 == 0) {
        // Gamma(k/2 + 1/3) Gamma(k/2 - 1/3) = r * Gamma(1/3) Gamma(2/3)
        // with rational r; the reflection value is 2 pi / sqrt(3).
        const int m = k / 2;
        BigRat r(1);
        for (int i = 0; i < m; ++i) r *= BigRat(i) + make_rat(1, 3);
        if (m == 0)
            r *= -3;  // Gamma(-1/3) = Gamma(2/3) / (-1/3)
        else
            for (int i = 0; i + 1 < m; ++i) r *= BigRat(i) + make_rat(2, 3);
        return SymReal::term(make_rat(32, 81) * r * four_pow * six_whole, rem + 2, rem + 2);
    }
    // Odd k: the arguments shift to m + 5/6 and m + 1/6, and
    // Gamma(1/6) Gamma(5/6) = 2 pi.
    const int m = (k - 1) / 2;
    BigRat r(1);
    for (int i = 0; i < m; ++i) r *= (BigRat(i) + make_rat(5, 6)) * (BigRat(i) + make_rat(1, 6));
    return SymReal::term(make_rat(32, 27) * r * four_pow * six_whole, rem + 2, rem);
}

std::string pump_csv(const PumpSpec& spec, int k_max) {
    const std::vector<SymReal> c = pump(spec, k_max);
    const std::vector<BigFloat> lim = limit_moments(spec, k_max);
    std::string out = "instance,k,c_exact,c_float,limit_moment\n";
    for (int k = 0; k <= k_max; ++k) {
        const auto& ck = c[static_cast<std::size_t>(k)];
        out += spec.name + "," + std::to_string(k) + "," + ck.str() + "," +
               ck.exact_float().str(30) + "," + lim[static_cast<std::size_t>(k)].str(30) + "\n";
    }
    return out;
}

namespace {

using nlohmann::json;

json symreal_to_json(const SymReal& s) {
    json arr = json::array();
    for (const auto& [key, val] : s.terms())
        arr.push_back({{"coeff", rat_string(val)},
                       {"two4", key.two4},
                       {"three4", key.three4},
                       {"pihalf", key.pihalf}});
    return arr;
}

SymReal symreal_from_json(const json& j) {
    SymReal s;
    for (const json& t : j)
        s = s + SymReal::term(parse_rat(t.at("coeff").get<std::string>()), t.at("two4").get<int>(),
                              t.at("three4").get<int>(), t.value("pihalf", 0));
    return s;
}

json kpoly_to_json(const KPoly& p) {
    json arr = json::array();
    for (const SymReal& c : p.coeff) arr.push_back(symreal_to_json(c));
    return arr;
}

KPoly kpoly_from_json(const json& j) {
    KPoly p;
    for (const json& c : j) p.coeff.push_back(symreal_from_json(c));
    return p;
}

}  // namespace

std::string pump_spec_json(const PumpSpec& spec) {
    json j;
    j["name"] = spec.name;
    j["L"] = spec.L;
    j["alpha"] = rat_string(spec.alpha);
    j["beta"] = rat_string(spec.beta);
    j["rho"] = rat_string(spec.rho);
    json lags = json::array();
    for (const KRational& ad : spec.a) {
        json entry;
        entry["num"] = kpoly_to_json(ad.num);
        if (!ad.den.coeff.empty()) entry["den"] = kpoly_to_json(ad.den);
        lags.push_back(entry);
    }
    j["a"] = lags;
    json cs = json::array();
    for (const SymReal& c : spec.c_init) cs.push_back(symreal_to_json(c));
    j["c_init"] = cs;
    return j.dump(1);
}

PumpSpec pump_spec_from_json(const std::string& text) {
    PumpSpec spec;
    try {
        const json j = json::parse(text);
        spec.name = j.at("name").get<std::string>();
        spec.L = j.at("L").get<int>();
        spec.alpha = parse_rat(j.at("alpha").get<std::string>());
        spec.beta = parse_rat(j.at("beta").get<std::string>());
        spec.rho = parse_rat(j.at("rho").get<std::string>());
        for (const json& ad : j.at("a")) {
            KRational r;
            r.num = kpoly_from_json(ad.at("num"));
            if (ad.contains("den")) r.den = kpoly_from_json(ad.at("den"));
            spec.a.push_back(std::move(r));
        }
        for (const json& c : j.at("c_init")) spec.c_init.push_back(symreal_from_json(c));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("pump_spec_from_json: ") + e.what());
    }
    spec.validate();
    return spec;
}

}  // namespace tamarilab
