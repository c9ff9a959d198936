#include "tamarilab/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "tamarilab/census.hpp"
#include "tamarilab/closed_form.hpp"
#include "tamarilab/decomp.hpp"
#include "tamarilab/dyck.hpp"
#include "tamarilab/gf.hpp"
#include "tamarilab/limit_law.hpp"
#include "tamarilab/moment_pump.hpp"
#include "tamarilab/sampler.hpp"
#include "tamarilab/stats.hpp"

namespace tamarilab {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    if (!in.good() && !in.eof()) throw std::runtime_error("read error on " + path);
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out.good()) throw std::runtime_error("write error on " + path);
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct WallTimer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

// Writes the primary output, then the manifest next to it (digests are of
// the bytes just written, so a reproduced run can be checked byte for byte).
void emit(RunManifest& m, const WallTimer& timer, const std::string& out_path,
          const std::string& content, const std::vector<std::string>& input_paths = {}) {
    for (const std::string& p : input_paths) m.inputs.emplace_back(p, file_digest(p));
    write_file(out_path, content);
    m.outputs.emplace_back(out_path, file_digest(out_path));
    m.wall_ms = timer.ms();
    write_file(out_path + ".manifest.json", manifest_json(m));
}

// Falling factorial h (h-1) ... (h-k+1).
BigInt falling(long h, int k) {
    BigInt r = 1;
    for (int i = 0; i < k; ++i) r *= BigInt(h - i);
    return r;
}

// Stirling numbers of the second kind up to row k_max; converts factorial
// moments into raw ones via E[X^k] = sum_j S(k,j) E[(X)_j].
std::vector<std::vector<BigInt>> stirling2(int k_max) {
    std::vector<std::vector<BigInt>> s(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        s[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(k) + 1, BigInt(0));
        if (k == 0) {
            s[0][0] = 1;
            continue;
        }
        for (int j = 1; j <= k; ++j) {
            // S(k,j) = j S(k-1,j) + S(k-1,j-1); row k-1 stops at j = k-1.
            BigInt v = s[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)];
            if (j < k)
                v += BigInt(j) * s[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j)];
            s[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = std::move(v);
        }
    }
    return s;
}

// Iterates the requested equation in moment mode, going through the cache
// directory (TAMARILAB_CACHE_DIR) when one is configured. Snapshots are
// keyed by tag and moment order and grow monotonically via gf_extend.
GFArray cached_iterate(GFTag tag, int n_max, int moment_order) {
    const auto compute = [&](int order) {
        switch (tag) {
            case GFTag::H: return iterate_H(order, moment_order);
            case GFTag::G: return iterate_G(order, moment_order);
            case GFTag::M: return iterate_M(order, moment_order);
            default: throw std::logic_error("cached_iterate: unsupported tag");
        }
    };
    const char* dir = std::getenv("TAMARILAB_CACHE_DIR");
    if (!dir || !*dir) return compute(n_max);
    const char tag_letter = tag == GFTag::H ? 'H' : (tag == GFTag::G ? 'G' : 'M');
    const std::string path = std::string(dir) + "/gf_" + tag_letter + "_m" +
                             std::to_string(moment_order) + ".json";
    if (std::ifstream(path).good()) {
        try {
            GFArray a = gf_from_snapshot_json(read_file(path));
            if (a.moment_order == moment_order && a.tag == tag) {
                if (a.order() < n_max) {
                    a = gf_extend(std::move(a), n_max);
                    write_file(path, gf_snapshot_json(a));
                }
                return a;
            }
        } catch (const std::exception&) {
            // stale or foreign snapshot; recompute below
        }
    }
    GFArray a = compute(n_max);
    write_file(path, gf_snapshot_json(a));
    return a;
}

CheckReport census_check(GFTag tag, int cap) {
    GFArray a = tag == GFTag::H ? iterate_H(cap) : (tag == GFTag::G ? iterate_G(cap) : iterate_M(cap));
    const char letter = tag == GFTag::H ? 'H' : (tag == GFTag::G ? 'G' : 'M');
    CheckReport r;
    r.check = std::string("census-") + letter;
    r.order = cap;
    r.pass = true;
    r.note = "functional-equation iteration vs direct census over the closure";
    for (int n = 0; n <= cap; ++n) {
        const MultiPoly truth = tag == GFTag::H   ? census_H(n, a.vars)
                                : tag == GFTag::G ? census_G(n, a.vars)
                                                  : census_M(n, a.vars);
        if (!(a.at(n) == truth)) {
            r.pass = false;
            r.discrepancy = "first mismatch at n=" + std::to_string(n);
            break;
        }
    }
    return r;
}

// Closure enumeration is the ground truth for uniformity, so the stats mode
// that needs it only works while the closure is enumerable.
constexpr int kUniformityCap = 8;

// Exact tables hold (n+1)(n+2)/2 big integers of about 3.25 n bits each;
// past this point the log-float sampler is the intended tool.
constexpr int kExactModeCap = 400;

}  // namespace

std::string file_digest(const std::string& path) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(read_file(path))));
    return std::string("fnv1a64:") + buf;
}

std::string manifest_json(const RunManifest& m) {
    ordered_json j;
    j["subcommand"] = m.subcommand;
    j["artifact_version"] = m.artifact_version;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : m.params) params[k] = v;
    j["parameters"] = std::move(params);
    if (m.has_seed) j["seed"] = m.seed;
    ordered_json ins = ordered_json::array();
    for (const auto& [p, d] : m.inputs) ins.push_back({{"path", p}, {"digest", d}});
    j["inputs"] = std::move(ins);
    ordered_json outs = ordered_json::array();
    for (const auto& [p, d] : m.outputs) outs.push_back({{"path", p}, {"digest", d}});
    j["outputs"] = std::move(outs);
    j["wall_ms"] = m.wall_ms;
    return j.dump(1) + "\n";
}

int cmd_counts(const CountsOpts& o) {
    if (o.n_max < 0) throw std::invalid_argument("counts: --n-max must be nonnegative");
    WallTimer timer;
    RunManifest m;
    m.subcommand = "counts";
    m.params = {{"n-max", std::to_string(o.n_max)}, {"out", o.out}};

    CountTable table = CountTable::build(o.n_max);
    std::string csv =
        "# columns: n = interval size; k = contacts of the lower path; count = Tamari intervals "
        "of size n with k lower contacts; row_sum = sum of count over k at this n; formula = "
        "2/(n(n+1)) * binomial(4n+1, n-1)\n";
    csv += "n,k,count,row_sum,formula\n";
    bool all_match = true;
    std::size_t rows = 0;
    for (int n = 0; n <= o.n_max; ++n) {
        const BigInt row_sum = table.row_sum(n);
        const BigInt formula = interval_count_formula(n);
        if (row_sum != formula) all_match = false;
        for (int k = 1; k <= n + 1; ++k) {
            const BigInt& c = table.count(n, k);
            if (c == 0) continue;
            csv += std::to_string(n) + "," + std::to_string(k) + "," + c.get_str() + "," +
                   row_sum.get_str() + "," + formula.get_str() + "\n";
            ++rows;
        }
    }
    emit(m, timer, o.out, csv);
    std::printf("counts: n <= %d, %zu rows, row sums %s the closed formula -> %s\n", o.n_max,
                rows, all_match ? "match" : "DISAGREE with", o.out.c_str());
    return all_match ? 0 : 1;
}

int cmd_verify(const VerifyOpts& o) {
    if (o.checks.empty()) throw std::invalid_argument("verify: empty check list");
    if (o.order < 0) throw std::invalid_argument("verify: --order must be nonnegative");
    WallTimer timer;
    RunManifest m;
    m.subcommand = "verify";
    std::string joined;
    for (const std::string& c : o.checks) joined += (joined.empty() ? "" : ",") + c;
    m.params = {{"checks", joined}, {"order", std::to_string(o.order)}, {"out", o.out}};

    std::vector<std::string> names;
    for (const std::string& c : o.checks) {
        if (c == "all") {
            for (const char* x : {"F", "H", "G", "M", "kernels", "census"}) names.push_back(x);
        } else if (c == "F" || c == "H" || c == "G" || c == "M" || c == "kernels" ||
                   c == "census") {
            names.push_back(c);
        } else {
            throw std::invalid_argument("verify: unknown check '" + c +
                                        "' (expected F, H, G, M, kernels, census or all)");
        }
    }

    std::vector<CheckReport> reports;
    for (const std::string& name : names) {
        const auto pick = [&](int dflt) { return o.order > 0 ? o.order : dflt; };
        if (name == "F") reports.push_back(verify_F_parametrization(pick(20)));
        else if (name == "H") reports.push_back(verify_H_parametrization(pick(12)));
        else if (name == "G") reports.push_back(verify_G_annihilator(pick(20)));
        else if (name == "M") reports.push_back(verify_M_parametrization(pick(15)));
        else if (name == "kernels") reports.push_back(verify_kernel_roots(pick(20)));
        else {
            const int cap = std::min(pick(kUniformityCap), kUniformityCap);
            for (GFTag tag : {GFTag::H, GFTag::G, GFTag::M}) reports.push_back(census_check(tag, cap));
        }
    }

    int failures = 0;
    for (const CheckReport& r : reports)
        if (!r.pass) ++failures;
    emit(m, timer, o.out, check_report_json(reports));
    std::printf("verify: %zu/%zu checks pass -> %s\n", reports.size() - failures, reports.size(),
                o.out.c_str());
    return failures == 0 ? 0 : 1;
}

int cmd_sample(const SampleOpts& o) {
    if (o.n < 0) throw std::invalid_argument("sample: --n must be nonnegative");
    if (o.count <= 0) throw std::invalid_argument("sample: --count must be positive");
    const bool exact = o.mode == "exact";
    if (!exact && o.mode != "log-float")
        throw std::invalid_argument("sample: --mode must be exact or log-float");
    if (o.stats != "summary" && o.stats != "marked" && o.stats != "profile" &&
        o.stats != "uniformity")
        throw std::invalid_argument("sample: --stats must be summary, marked, profile or uniformity");
    if (exact && o.n > kExactModeCap)
        throw std::invalid_argument(
            "sample: exact tables above n = " + std::to_string(kExactModeCap) +
            " exceed the memory budget; rerun with --mode log-float");
    if (o.stats == "marked" && o.n < 1)
        throw std::invalid_argument("sample: marked statistics need n >= 1");
    if (o.stats == "uniformity" && o.n > kUniformityCap)
        throw std::invalid_argument("sample: uniformity enumerates every interval; needs n <= " +
                                    std::to_string(kUniformityCap));

    WallTimer timer;
    RunManifest m;
    m.subcommand = "sample";
    m.params = {{"n", std::to_string(o.n)},       {"count", std::to_string(o.count)},
                {"seed", std::to_string(o.seed)}, {"mode", o.mode},
                {"stats", o.stats},               {"dump-paths", o.dump_paths ? "true" : "false"},
                {"out", o.out}};
    m.has_seed = true;
    m.seed = o.seed;

    // Both samplers are built up front; drawing shares one RNG stream, so
    // exact-mode outputs are a pure function of (n, count, seed, stats).
    CountTable table = exact ? CountTable::build(o.n) : CountTable();
    ExactSampler exact_sampler(table);
    FloatSampler float_sampler;
    if (!exact) float_sampler = FloatSampler::build_or_load(o.n);
    Rng rng(o.seed);
    const auto draw = [&]() {
        return exact ? exact_sampler.sample(o.n, rng) : float_sampler.sample(o.n, rng);
    };

    if (o.stats == "uniformity") {
        TamariClosure closure(o.n);
        const auto all = closure.intervals();
        std::map<std::pair<int, int>, std::size_t> cell_of;
        for (std::size_t c = 0; c < all.size(); ++c)
            cell_of[{closure.id(all[c].lower), closure.id(all[c].upper)}] = c;
        std::vector<std::uint64_t> cells(all.size(), 0);
        long violations = 0;
        for (long s = 0; s < o.count; ++s) {
            const TamariInterval iv = draw();
            const auto it = cell_of.find({closure.id(iv.lower), closure.id(iv.upper)});
            if (it == cell_of.end()) ++violations;  // pair not Tamari-comparable
            else ++cells[it->second];
        }
        const double chi2 = chi2_equal_cells(cells);
        const int dof = static_cast<int>(cells.size()) - 1;
        const double p = dof > 0 ? chi2_pvalue(chi2, dof) : 1.0;
        const double significance = 1e-3;
        const bool pass = violations == 0 && p >= significance;
        ordered_json j;
        j["n"] = o.n;
        j["mode"] = o.mode;
        j["samples"] = o.count;
        j["cells"] = cells.size();
        j["tamari_violations"] = violations;
        j["chi2"] = chi2;
        j["dof"] = dof;
        j["p_value"] = p;
        j["significance"] = significance;
        j["pass"] = pass;
        emit(m, timer, o.out, j.dump(1) + "\n");
        std::printf("sample: %ld draws at n=%d (%s), uniformity over %zu intervals: chi2 p=%.4g, "
                    "%ld violations -> %s\n",
                    o.count, o.n, o.mode.c_str(), cells.size(), p, violations, o.out.c_str());
        return pass ? 0 : 1;
    }

    std::string csv;
    if (o.stats == "summary") {
        csv = "# columns: contacts = vertices of the lower path at height 0; lower_peak / "
              "upper_peak = maximum path heights";
        if (o.dump_paths) csv += "; lower / upper = paths as U/D step strings";
        csv += "\ncontacts,lower_peak,upper_peak";
        if (o.dump_paths) csv += ",lower,upper";
        csv += "\n";
        for (long s = 0; s < o.count; ++s) {
            const TamariInterval iv = draw();
            int lp = 0, up = 0;
            for (int h : iv.lower.heights()) lp = std::max(lp, h);
            for (int h : iv.upper.heights()) up = std::max(up, h);
            csv += std::to_string(iv.lower.contacts()) + "," + std::to_string(lp) + "," +
                   std::to_string(up);
            if (o.dump_paths) csv += "," + iv.lower.str() + "," + iv.upper.str();
            csv += "\n";
        }
    } else if (o.stats == "marked") {
        csv = "# columns: i = uniform abscissa in 0..2n; P_i / Q_i = lower / upper path height "
              "at i; j = uniform up-step index of the coupling; i_couple = start of the j-th "
              "up-step of the lower path or of its matching down-step, equiprobably; Ptilde_j / "
              "Qtilde_j = heights at which the j-th up-steps of the lower / upper path start; "
              "couple_gap = P(i_couple) - Ptilde_j, always in {-1, 0, 1}\n";
        csv += "i,P_i,Q_i,j,i_couple,Ptilde_j,Qtilde_j,couple_gap\n";
        for (long s = 0; s < o.count; ++s) {
            const TamariInterval iv = draw();
            const int i = rng.uniform_int(0, 2 * o.n);
            const CoupleDraw cd = couple_abscissa(iv.lower, rng);
            const int ptilde = iv.lower.upstep_height(cd.upstep);
            const int qtilde = iv.upper.upstep_height(cd.upstep);
            const int gap = iv.lower.height_at(cd.abscissa) - ptilde;
            csv += std::to_string(i) + "," + std::to_string(iv.lower.height_at(i)) + "," +
                   std::to_string(iv.upper.height_at(i)) + "," + std::to_string(cd.upstep) + "," +
                   std::to_string(cd.abscissa) + "," + std::to_string(ptilde) + "," +
                   std::to_string(qtilde) + "," + std::to_string(gap) + "\n";
        }
    } else {  // profile
        csv = "# columns: sample = draw index; i = abscissa; P_i / Q_i = lower / upper path "
              "height at i; ratio = Q_i / P_i, empty where P_i = 0 (concentrates near 3 away "
              "from the endpoints as n grows)\n";
        csv += "sample,i,P_i,Q_i,ratio\n";
        for (long s = 0; s < o.count; ++s) {
            const TamariInterval iv = draw();
            const auto pl = iv.lower.heights();
            const auto qu = iv.upper.heights();
            for (int i = 0; i <= 2 * o.n; ++i) {
                const int p = pl[static_cast<std::size_t>(i)];
                const int q = qu[static_cast<std::size_t>(i)];
                csv += std::to_string(s) + "," + std::to_string(i) + "," + std::to_string(p) +
                       "," + std::to_string(q) + ",";
                if (p > 0) csv += fmt17(static_cast<double>(q) / p);
                csv += "\n";
            }
        }
    }
    emit(m, timer, o.out, csv);
    std::printf("sample: %ld draws at n=%d (%s, %s) -> %s\n", o.count, o.n, o.mode.c_str(),
                o.stats.c_str(), o.out.c_str());
    return 0;
}

int cmd_moments(const MomentsOpts& o) {
    if (o.k_max < 0) throw std::invalid_argument("moments: --k-max must be nonnegative");
    if (o.n_max < 1) throw std::invalid_argument("moments: --n-max must be at least 1");
    const bool dyck = o.instance == "dyck";
    if (!dyck && o.instance != "upper" && o.instance != "lower")
        throw std::invalid_argument("moments: --instance must be dyck, upper or lower");
    WallTimer timer;
    RunManifest m;
    m.subcommand = "moments";
    m.params = {{"instance", o.instance},
                {"k-max", std::to_string(o.k_max)},
                {"n-max", std::to_string(o.n_max)},
                {"out", o.out}};

    const double beta = dyck ? 0.5 : 0.75;
    // Per n: the number of marked configurations, then exact factorial and
    // raw moments of the height statistic over them.
    std::vector<BigRat> count(static_cast<std::size_t>(o.n_max) + 1);
    std::vector<std::vector<BigRat>> fact(static_cast<std::size_t>(o.n_max) + 1),
        raw(static_cast<std::size_t>(o.n_max) + 1);
    std::vector<BigFloat> limit(static_cast<std::size_t>(o.k_max) + 1);

    if (dyck) {
        // Height of a uniform Dyck path at a uniform abscissa, by the ballot
        // count b[m][h] = walks of length m from 0 to h staying nonnegative:
        // paths with height h at abscissa i split as b[i][h] * b[2n-i][h].
        std::vector<std::vector<BigInt>> b(static_cast<std::size_t>(2 * o.n_max) + 1);
        b[0] = {BigInt(1)};
        for (int mm = 1; mm <= 2 * o.n_max; ++mm) {
            b[static_cast<std::size_t>(mm)].assign(static_cast<std::size_t>(mm) + 1, BigInt(0));
            for (int h = 0; h <= mm; ++h) {
                BigInt v = 0;
                if (h > 0) v += b[static_cast<std::size_t>(mm - 1)][static_cast<std::size_t>(h - 1)];
                if (h + 1 <= mm - 1) v += b[static_cast<std::size_t>(mm - 1)][static_cast<std::size_t>(h + 1)];
                b[static_cast<std::size_t>(mm)][static_cast<std::size_t>(h)] = v;
            }
        }
        for (int n = 1; n <= o.n_max; ++n) {
            std::vector<BigInt> mass(static_cast<std::size_t>(n) + 1, BigInt(0));
            for (int i = 0; i <= 2 * n; ++i)
                for (int h = 0; h <= std::min(i, 2 * n - i); ++h)
                    mass[static_cast<std::size_t>(h)] +=
                        b[static_cast<std::size_t>(i)][static_cast<std::size_t>(h)] *
                        b[static_cast<std::size_t>(2 * n - i)][static_cast<std::size_t>(h)];
            const BigInt total = BigInt(2 * n + 1) * catalan(n);
            count[static_cast<std::size_t>(n)] = BigRat(total);
            auto& fn = fact[static_cast<std::size_t>(n)];
            auto& rn = raw[static_cast<std::size_t>(n)];
            fn.assign(static_cast<std::size_t>(o.k_max) + 1, BigRat(0));
            rn.assign(static_cast<std::size_t>(o.k_max) + 1, BigRat(0));
            for (int k = 0; k <= o.k_max; ++k) {
                BigInt f = 0, r = 0;
                for (int h = 0; h <= n; ++h) {
                    const BigInt& w = mass[static_cast<std::size_t>(h)];
                    if (w == 0) continue;
                    f += falling(h, k) * w;
                    BigInt hp = 1;
                    for (int t = 0; t < k; ++t) hp *= BigInt(h);
                    r += hp * w;
                }
                fn[static_cast<std::size_t>(k)] = make_rat(f, total);
                rn[static_cast<std::size_t>(k)] = make_rat(r, total);
            }
        }
        for (int k = 0; k <= o.k_max; ++k)
            limit[static_cast<std::size_t>(k)] = BigFloat(make_rat(k + 2, 2)).gamma();
    } else {
        const GFTag tag = o.instance == "upper" ? GFTag::H : GFTag::G;
        const std::string var = o.instance == "upper" ? "s" : "w";
        GFArray a = cached_iterate(tag, o.n_max, o.k_max);
        std::vector<RatSeries> fm;
        for (int k = 0; k <= o.k_max; ++k)
            fm.push_back(factorial_moment_series(a, var, k));
        const auto s2 = stirling2(o.k_max);
        for (int n = 1; n <= o.n_max; ++n) {
            const BigRat total = fm[0].at(n);  // (2n+1) a_n marked configurations
            count[static_cast<std::size_t>(n)] = total;
            auto& fn = fact[static_cast<std::size_t>(n)];
            auto& rn = raw[static_cast<std::size_t>(n)];
            fn.assign(static_cast<std::size_t>(o.k_max) + 1, BigRat(0));
            rn.assign(static_cast<std::size_t>(o.k_max) + 1, BigRat(0));
            for (int k = 0; k <= o.k_max; ++k) {
                fn[static_cast<std::size_t>(k)] = fm[static_cast<std::size_t>(k)].at(n) / total;
                BigRat r(0);
                for (int j = 0; j <= k; ++j)
                    r += BigRat(s2[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) *
                         fn[static_cast<std::size_t>(j)];
                rn[static_cast<std::size_t>(k)] = r;
            }
        }
        const LimitLawSpec law =
            o.instance == "upper" ? LimitLawSpec::upper() : LimitLawSpec::lower();
        for (int k = 0; k <= o.k_max; ++k) limit[static_cast<std::size_t>(k)] = z_moment(law, k);
    }

    std::string csv =
        "# columns: count = marked configurations at size n ((2n+1) Catalan(n) for dyck, (2n+1) "
        "a_n for upper and lower, a_n = Tamari interval count); factorial_exact = E[(X)_k] "
        "falling-factorial moment of the height X at the mark; raw_exact / raw_float = E[X^k]; "
        "limit_float = lim E[(X / n^beta)^k]; prediction_float = limit * n^(beta k); rel_gap = "
        "raw / prediction - 1 (beta = 1/2 for dyck, 3/4 for upper and lower)\n";
    csv += "instance,n,k,count,factorial_exact,raw_exact,raw_float,limit_float,prediction_float,"
           "rel_gap\n";
    for (int n = 1; n <= o.n_max; ++n)
        for (int k = 0; k <= o.k_max; ++k) {
            const BigRat& f = fact[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
            const BigRat& r = raw[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
            const double rf = BigFloat(r).to_double();
            const double lim = limit[static_cast<std::size_t>(k)].to_double();
            const double pred = lim * std::pow(n, beta * k);
            csv += o.instance + "," + std::to_string(n) + "," + std::to_string(k) + "," +
                   rat_string(count[static_cast<std::size_t>(n)]) + "," + rat_string(f) + "," +
                   rat_string(r) + "," + fmt17(rf) + "," + fmt17(lim) + "," + fmt17(pred) + "," +
                   fmt17(rf / pred - 1.0) + "\n";
        }
    emit(m, timer, o.out, csv);
    std::printf("moments: instance %s, n <= %d, k <= %d -> %s\n", o.instance.c_str(), o.n_max,
                o.k_max, o.out.c_str());
    return 0;
}

int cmd_mixed(const MixedOpts& o) {
    if (o.n_max < 1) throw std::invalid_argument("mixed: --n-max must be at least 1");
    WallTimer timer;
    RunManifest m;
    m.subcommand = "mixed";
    m.params = {{"n-max", std::to_string(o.n_max)}, {"out", o.out}};

    // X = Qtilde - 3 Ptilde is the w-exponent of the M iteration, so its
    // power sums come from w-derivatives at w = 1: E[X] = D1/count and
    // E[X^2] = (D2 + D1)/count with Dk the k-th derivative sum.
    GFArray a = cached_iterate(GFTag::M, o.n_max, 2);
    const RatSeries d0 = factorial_moment_series(a, "w", 0);
    const RatSeries d1 = factorial_moment_series(a, "w", 1);
    const RatSeries d2 = factorial_moment_series(a, "w", 2);

    std::string csv =
        "# columns: count = n a_n marked up-steps at size n (a_n = Tamari interval count); "
        "mean_exact = E[Qtilde - 3 Ptilde]; second_exact / second_float = E[(Qtilde - 3 "
        "Ptilde)^2]; second_over_n = second moment / n, bounded in n\n";
    csv += "n,count,mean_exact,second_exact,second_float,second_over_n\n";
    for (int n = 1; n <= o.n_max; ++n) {
        const BigRat total = d0.at(n);
        const BigRat mean = d1.at(n) / total;
        const BigRat second = (d2.at(n) + d1.at(n)) / total;
        const double sf = BigFloat(second).to_double();
        csv += std::to_string(n) + "," + rat_string(total) + "," + rat_string(mean) + "," +
               rat_string(second) + "," + fmt17(sf) + "," + fmt17(sf / n) + "\n";
    }
    emit(m, timer, o.out, csv);
    std::printf("mixed: n <= %d -> %s\n", o.n_max, o.out.c_str());
    return 0;
}

int cmd_pump(const PumpOpts& o) {
    if (o.k_max < 0) throw std::invalid_argument("pump: --k-max must be nonnegative");
    if (o.instance.empty() == o.spec_json.empty())
        throw std::invalid_argument("pump: give exactly one of --instance and --spec-json");
    WallTimer timer;
    RunManifest m;
    m.subcommand = "pump";
    m.params = {{"instance", o.instance},
                {"spec-json", o.spec_json},
                {"k-max", std::to_string(o.k_max)},
                {"out", o.out}};

    PumpSpec spec;
    std::vector<std::string> inputs;
    if (!o.instance.empty()) {
        if (o.instance == "dyck") spec = dyck_instance();
        else if (o.instance == "dyck-beta-3/4") spec = dyck_instance_beta34();
        else if (o.instance == "upper") spec = upper_path_instance();
        else if (o.instance == "lower") spec = lower_path_instance();
        else
            throw std::invalid_argument(
                "pump: --instance must be dyck, dyck-beta-3/4, upper or lower");
    } else {
        spec = pump_spec_from_json(read_file(o.spec_json));
        inputs.push_back(o.spec_json);
    }

    std::string csv =
        "# columns: c_exact = singular coefficient c_k in the field Q(2^(1/4), 3^(1/4), "
        "sqrt(pi)); c_float = 30 digits of c_k; limit_moment = c_k Gamma(-alpha) / (c_0 "
        "Gamma(beta k - alpha)), the limit of E[(X_n / n^beta)^k]\n";
    csv += pump_csv(spec, o.k_max);
    emit(m, timer, o.out, csv, inputs);
    std::printf("pump: instance %s, k <= %d -> %s\n", spec.name.c_str(), o.k_max, o.out.c_str());
    return 0;
}

}  // namespace tamarilab
