#include "tamarilab/sampler.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace tamarilab {

BigInt uniform_below_big(Rng& rng, const BigInt& bound) {
    if (bound <= 0) throw std::invalid_argument("uniform_below_big: nonpositive bound");
    const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    while (true) {
        BigInt x = 0;
        for (std::size_t w = 0; w < words; ++w) {
            mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), 64);
            x += BigInt(rng.next_u64());
        }
        mpz_tdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(words * 64 - bits));
        if (x < bound) return x;
    }
}

namespace {

// One node of the decomposition tree being sampled. contacts == -1 marks an
// unconditioned (plain uniform) node; otherwise the node is uniform among
// intervals with exactly that many lower-path contacts.
struct NodeSpec {
    int size;
    int contacts;
    int mark = 0;
    int c1 = -1, c2 = -1;
};

// Builds the interval encoded by a decomposition tree in one left-to-right
// pass over each path. Calling compose() per node would copy every child
// into its parent, and since the split sizes concentrate at the extremes
// the tree is usually a long spine, making that quadratic in the size.
//
// The recursion it replaces is
//   lower(v) = u . p1[0..cut) . d . p1[cut..) . p2     cut = mark-th contact of p1
//   upper(v) = u . q1 . d . q2
// with p1/q1 from child c1 and p2/q2 from child c2. For the lower path the
// down step lands right after the mark-th contact of p1, and within p1's
// emission span a contact is exactly a return to the height the span started
// at. So we keep a stack of pending down steps, each remembering its target
// height and how many returns it still has to see; whenever the walk touches
// the innermost target we decrement it, emit the down step once it hits
// zero, and repeat in case that step completes the next pending one too.
TamariInterval assemble(const std::vector<NodeSpec>& nodes) {
    std::size_t steps = 0;
    for (const NodeSpec& nd : nodes)
        if (nd.size > 0) steps += 2;

    std::vector<bool> lower;
    lower.reserve(steps);
    struct Pending {
        int target;
        int remaining;
    };
    std::vector<Pending> pending;
    std::vector<int> work;
    int h = 0;
    auto after_vertex = [&]() {
        while (!pending.empty() && h == pending.back().target) {
            if (--pending.back().remaining > 0) break;
            lower.push_back(false);
            --h;
            pending.pop_back();
        }
    };
    work.push_back(0);
    while (!work.empty()) {
        const NodeSpec& nd = nodes[static_cast<std::size_t>(work.back())];
        work.pop_back();
        if (nd.size == 0) continue;
        lower.push_back(true);
        ++h;
        pending.push_back({h, nd.mark});  // the span's start vertex is contact 1
        after_vertex();
        work.push_back(nd.c2);
        work.push_back(nd.c1);
    }
    if (!pending.empty() || h != 0) throw std::logic_error("assemble: malformed node tree");

    std::vector<bool> upper;
    upper.reserve(steps);
    work.push_back(0);  // -1 stands for the down step between the two children
    while (!work.empty()) {
        const int v = work.back();
        work.pop_back();
        if (v == -1) {
            upper.push_back(false);
            continue;
        }
        const NodeSpec& nd = nodes[static_cast<std::size_t>(v)];
        if (nd.size == 0) continue;
        upper.push_back(true);
        work.push_back(nd.c2);
        work.push_back(-1);
        work.push_back(nd.c1);
    }

    return {DyckPath(std::move(lower)), DyckPath(std::move(upper))};
}

// Consumes subintervals of [0,1) from both ends; the meeting point absorbs
// whatever rounding slack the masses leave (they sum to 1 only up to float
// error). Expected probes are O(1) here because split sizes concentrate at
// the extremes.
template <class MassFn>
int draw_index_two_ended(int count, double u, MassFn mass) {
    int lo = 0, hi = count - 1;
    double left = 0.0, right = 1.0;
    while (lo < hi) {
        const double ml = mass(lo);
        if (u < left + ml) return lo;
        left += ml;
        ++lo;
        if (lo >= hi) break;
        const double mh = mass(hi);
        if (u >= right - mh) return hi;
        right -= mh;
        --hi;
    }
    return lo;
}

}  // namespace

ExactSampler::ExactSampler(const CountTable& counts) : counts_(counts) {
    totals_.reserve(static_cast<std::size_t>(counts.n_max()) + 1);
    marked_.reserve(static_cast<std::size_t>(counts.n_max()) + 1);
    for (int n = 0; n <= counts.n_max(); ++n) {
        totals_.push_back(counts.row_sum(n));
        marked_.push_back(counts.marked_sum(n));
    }
}

TamariInterval ExactSampler::sample(int n, Rng& rng) const {
    if (n < 0 || n > n_max()) throw std::out_of_range("ExactSampler::sample: size beyond built table");
    std::vector<NodeSpec> nodes{{n, -1}};
    std::vector<std::size_t> todo{0};
    while (!todo.empty()) {
        const std::size_t v = todo.back();
        todo.pop_back();
        const int s = nodes[v].size;
        const int m = nodes[v].contacts;
        if (s == 0) {
            if (m > 1) throw std::logic_error("ExactSampler: empty node conditioned on >1 contacts");
            continue;
        }
        int a = -1, k = -1, mark = 0, second_contacts = -1;
        if (m < 0) {
            // Split size: weight(a) = marked(a) * total(b); normalizer is the
            // row sum of size s by the counting identity.
            BigInt r = uniform_below_big(rng, totals_[static_cast<std::size_t>(s)]);
            BigInt acc = 0;
            for (int cand = 0; cand < s; ++cand) {
                acc += marked_[static_cast<std::size_t>(cand)] * totals_[static_cast<std::size_t>(s - 1 - cand)];
                if (r < acc) {
                    a = cand;
                    break;
                }
            }
            if (a < 0) throw std::logic_error("ExactSampler: unconditioned split fell off the table");
            // Contact count of the marked part: weight k * I[a][k].
            BigInt r2 = uniform_below_big(rng, marked_[static_cast<std::size_t>(a)]);
            BigInt acc2 = 0;
            for (int kk = 1; kk <= a + 1; ++kk) {
                acc2 += kk * counts_.count(a, kk);
                if (r2 < acc2) {
                    k = kk;
                    break;
                }
            }
            if (k < 0) throw std::logic_error("ExactSampler: contact draw fell off the row");
            mark = rng.uniform_int(1, k);
        } else {
            const BigInt& tot = counts_.count(s, m);
            if (tot == 0) throw std::logic_error("ExactSampler: conditioned on impossible contact count");
            // Joint (a, j): weight S[a][j] * I[b][m-j]; j is the number of
            // contacts at or after the mark, m-j the second part's contacts.
            BigInt r = uniform_below_big(rng, tot);
            BigInt acc = 0;
            int j = -1;
            for (int cand = 0; cand < s && a < 0; ++cand) {
                const int b = s - 1 - cand;
                for (int jj = 1; jj <= cand + 1; ++jj) {
                    const BigInt& sj = counts_.suffix(cand, jj);
                    if (sj == 0) break;  // suffix sums only shrink with j
                    const int jp = m - jj;
                    if (jp < 1 || jp > b + 1) continue;
                    const BigInt& ib = counts_.count(b, jp);
                    if (ib == 0) continue;
                    acc += sj * ib;
                    if (r < acc) {
                        a = cand;
                        j = jj;
                        break;
                    }
                }
            }
            if (a < 0) throw std::logic_error("ExactSampler: conditional split fell off the table");
            // Contact count k >= j of the marked part: weight I[a][k].
            BigInt r2 = uniform_below_big(rng, counts_.suffix(a, j));
            BigInt acc2 = 0;
            for (int kk = j; kk <= a + 1; ++kk) {
                acc2 += counts_.count(a, kk);
                if (r2 < acc2) {
                    k = kk;
                    break;
                }
            }
            if (k < 0) throw std::logic_error("ExactSampler: suffix draw fell off the row");
            mark = k - j + 1;
            second_contacts = m - j;
        }
        const int b = s - 1 - a;
        nodes[v].mark = mark;
        nodes[v].c1 = static_cast<int>(nodes.size());
        nodes.push_back({a, k});
        nodes[v].c2 = static_cast<int>(nodes.size());
        nodes.push_back({b, second_contacts});
        todo.push_back(static_cast<std::size_t>(nodes[v].c2));
        todo.push_back(static_cast<std::size_t>(nodes[v].c1));
    }
    return assemble(nodes);
}

void FloatSampler::finish_row(Row& row) const {
    row.s.assign(row.i.size(), 0.0);
    for (int j = static_cast<int>(row.i.size()) - 1; j >= 1; --j) {
        row.s[static_cast<std::size_t>(j)] = row.i[static_cast<std::size_t>(j)];
        if (j + 1 < static_cast<int>(row.i.size()))
            row.s[static_cast<std::size_t>(j)] += row.s[static_cast<std::size_t>(j) + 1];
    }
    row.marked = 0.0;
    for (int k = 1; k < static_cast<int>(row.i.size()); ++k)
        row.marked += k * row.i[static_cast<std::size_t>(k)];
}

FloatSampler FloatSampler::build(int n_max) {
    if (n_max < 0) throw std::invalid_argument("FloatSampler::build: negative size");
    FloatSampler fs;
    fs.rows_.resize(static_cast<std::size_t>(n_max) + 1);
    fs.rows_[0].i = {0.0, 1.0};
    fs.finish_row(fs.rows_[0]);

    for (int n = 0; n < n_max; ++n) {
        const int width = std::min(n + 3, kWidth + 1);  // index range for contacts of size n+1
        std::vector<double> acc(static_cast<std::size_t>(width), 0.0);
        long eref = std::numeric_limits<long>::min();
        for (int a = 0; a <= n; ++a)
            eref = std::max(eref, fs.rows_[static_cast<std::size_t>(a)].e2 +
                                      fs.rows_[static_cast<std::size_t>(n - a)].e2);
        for (int a = 0; a <= n; ++a) {
            const Row& ra = fs.rows_[static_cast<std::size_t>(a)];
            const Row& rb = fs.rows_[static_cast<std::size_t>(n - a)];
            const long shift = ra.e2 + rb.e2 - eref;
            if (shift < -120) continue;  // below double noise relative to the peak term
            const double f = std::ldexp(1.0, static_cast<int>(shift));
            for (int j = 1; j < static_cast<int>(ra.s.size()); ++j) {
                const double c = f * ra.s[static_cast<std::size_t>(j)];
                if (c == 0.0) break;
                const int jp_hi = std::min(static_cast<int>(rb.i.size()) - 1, width - 1 - j);
                for (int jp = 1; jp <= jp_hi; ++jp)
                    acc[static_cast<std::size_t>(j + jp)] += c * rb.i[static_cast<std::size_t>(jp)];
            }
        }
        double mx = 0.0;
        for (double v : acc) mx = std::max(mx, v);
        if (mx <= 0.0) throw std::logic_error("FloatSampler::build: empty row");
        const int shift = std::ilogb(mx);
        Row& next = fs.rows_[static_cast<std::size_t>(n) + 1];
        next.e2 = eref + shift;
        next.i.assign(acc.size(), 0.0);
        const double scale = std::ldexp(1.0, -shift);  // exact power-of-two rescale
        for (std::size_t k = 0; k < acc.size(); ++k) next.i[k] = acc[k] * scale;
        fs.finish_row(next);
        // The stored window must hold essentially all the row's mass.
        if (static_cast<int>(next.i.size()) == kWidth + 1 &&
            next.i[static_cast<std::size_t>(kWidth)] > 1e-10 * next.s[1])
            throw std::logic_error("FloatSampler::build: contact window too narrow");
    }
    return fs;
}

double FloatSampler::log2_count(int n, int k) const {
    if (n < 0 || n > n_max()) throw std::out_of_range("FloatSampler::log2_count: row not built");
    const Row& r = rows_[static_cast<std::size_t>(n)];
    if (k < 1 || k >= static_cast<int>(r.i.size()) || r.i[static_cast<std::size_t>(k)] <= 0.0)
        return -std::numeric_limits<double>::infinity();
    return std::log2(r.i[static_cast<std::size_t>(k)]) + static_cast<double>(r.e2);
}

TamariInterval FloatSampler::sample(int n, Rng& rng) const {
    if (n < 0 || n > n_max()) throw std::out_of_range("FloatSampler::sample: size beyond built table");
    std::vector<NodeSpec> nodes{{n, -1}};
    std::vector<std::size_t> todo{0};
    while (!todo.empty()) {
        const std::size_t v = todo.back();
        todo.pop_back();
        const int s = nodes[v].size;
        const int m = nodes[v].contacts;
        if (s == 0) {
            if (m > 1) throw std::logic_error("FloatSampler: empty node conditioned on >1 contacts");
            continue;
        }
        const Row& rs = rows_[static_cast<std::size_t>(s)];
        int a = -1, k = -1, mark = 0, second_contacts = -1;
        if (m < 0) {
            const double norm = rs.s[1];  // row total, scale e2[s]
            a = draw_index_two_ended(s, rng.uniform01(), [&](int cand) {
                const Row& ra = rows_[static_cast<std::size_t>(cand)];
                const Row& rb = rows_[static_cast<std::size_t>(s - 1 - cand)];
                return ra.marked * rb.s[1] *
                       std::ldexp(1.0, static_cast<int>(ra.e2 + rb.e2 - rs.e2)) / norm;
            });
            const Row& ra = rows_[static_cast<std::size_t>(a)];
            double target = rng.uniform01() * ra.marked;
            double acc = 0.0;
            for (int kk = 1; kk < static_cast<int>(ra.i.size()); ++kk) {
                const double w = kk * ra.i[static_cast<std::size_t>(kk)];
                acc += w;
                if ((target < acc && w > 0.0) || kk == static_cast<int>(ra.i.size()) - 1) {
                    k = kk;
                    break;
                }
            }
            while (k > 1 && ra.i[static_cast<std::size_t>(k)] <= 0.0) --k;  // rounding fell past the support
            mark = rng.uniform_int(1, k);
        } else {
            const double norm = rs.i[static_cast<std::size_t>(m)];
            if (!(norm > 0.0)) throw std::logic_error("FloatSampler: conditioned on impossible contact count");
            auto pair_mass = [&](int cand) {
                const Row& ra = rows_[static_cast<std::size_t>(cand)];
                const Row& rb = rows_[static_cast<std::size_t>(s - 1 - cand)];
                double dot = 0.0;
                const int j_hi = std::min(static_cast<int>(ra.s.size()) - 1, m - 1);
                for (int j = std::max(1, m - (static_cast<int>(rb.i.size()) - 1)); j <= j_hi; ++j)
                    dot += ra.s[static_cast<std::size_t>(j)] * rb.i[static_cast<std::size_t>(m - j)];
                return dot * std::ldexp(1.0, static_cast<int>(ra.e2 + rb.e2 - rs.e2)) / norm;
            };
            a = draw_index_two_ended(s, rng.uniform01(), pair_mass);
            if (!(pair_mass(a) > 0.0)) {
                // Rounding leftovers fell on an infeasible split; snap to one
                // with mass. Happens with probability ~1e-15 per draw.
                a = -1;
                for (int cand = 0; cand < s; ++cand)
                    if (pair_mass(cand) > 0.0) {
                        a = cand;
                        break;
                    }
                if (a < 0) throw std::logic_error("FloatSampler: empty conditional split");
            }
            const Row& ra = rows_[static_cast<std::size_t>(a)];
            const Row& rb = rows_[static_cast<std::size_t>(s - 1 - a)];
            // j within the chosen split, proportional to S[a][j] * I[b][m-j].
            double dot = 0.0;
            const int j_lo = std::max(1, m - (static_cast<int>(rb.i.size()) - 1));
            const int j_hi = std::min(static_cast<int>(ra.s.size()) - 1, m - 1);
            for (int j = j_lo; j <= j_hi; ++j)
                dot += ra.s[static_cast<std::size_t>(j)] * rb.i[static_cast<std::size_t>(m - j)];
            if (!(dot > 0.0)) throw std::logic_error("FloatSampler: empty conditional split");
            double target = rng.uniform01() * dot;
            int j = -1;
            double acc = 0.0;
            for (int jj = j_lo; jj <= j_hi; ++jj) {
                const double w = ra.s[static_cast<std::size_t>(jj)] * rb.i[static_cast<std::size_t>(m - jj)];
                acc += w;
                if ((target < acc && w > 0.0) || jj == j_hi) {
                    j = (w > 0.0) ? jj : j;
                    break;
                }
                if (w > 0.0) j = jj;  // remember last feasible in case rounding overshoots
            }
            if (j < 0) throw std::logic_error("FloatSampler: conditional j draw failed");
            // k >= j proportional to I[a][k].
            target = rng.uniform01() * ra.s[static_cast<std::size_t>(j)];
            acc = 0.0;
            k = -1;
            for (int kk = j; kk < static_cast<int>(ra.i.size()); ++kk) {
                const double w = ra.i[static_cast<std::size_t>(kk)];
                acc += w;
                if ((target < acc && w > 0.0) || kk == static_cast<int>(ra.i.size()) - 1) {
                    k = (w > 0.0) ? kk : k;
                    break;
                }
                if (w > 0.0) k = kk;
            }
            if (k < j) throw std::logic_error("FloatSampler: suffix draw failed");
            mark = k - j + 1;
            second_contacts = m - j;
        }
        const int b = s - 1 - a;
        nodes[v].mark = mark;
        nodes[v].c1 = static_cast<int>(nodes.size());
        nodes.push_back({a, k});
        nodes[v].c2 = static_cast<int>(nodes.size());
        nodes.push_back({b, second_contacts});
        todo.push_back(static_cast<std::size_t>(nodes[v].c2));
        todo.push_back(static_cast<std::size_t>(nodes[v].c1));
    }
    return assemble(nodes);
}

namespace {
constexpr char kMagic[8] = {'T', 'L', 'F', 'T', '1', '\n', 0, 0};
}

void FloatSampler::save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("FloatSampler::save: cannot open " + path);
    os.write(kMagic, sizeof(kMagic));
    const std::int32_t nm = n_max(), width = kWidth;
    os.write(reinterpret_cast<const char*>(&nm), sizeof(nm));
    os.write(reinterpret_cast<const char*>(&width), sizeof(width));
    for (const Row& r : rows_) {
        const std::int32_t len = static_cast<std::int32_t>(r.i.size());
        const std::int64_t e2 = r.e2;
        os.write(reinterpret_cast<const char*>(&len), sizeof(len));
        os.write(reinterpret_cast<const char*>(&e2), sizeof(e2));
        os.write(reinterpret_cast<const char*>(r.i.data()), static_cast<std::streamsize>(r.i.size() * sizeof(double)));
    }
    if (!os) throw std::runtime_error("FloatSampler::save: write failed for " + path);
}

FloatSampler FloatSampler::load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("FloatSampler::load: cannot open " + path);
    char magic[8];
    is.read(magic, sizeof(magic));
    if (!is || !std::equal(magic, magic + 8, kMagic))
        throw std::runtime_error("FloatSampler::load: bad header in " + path);
    std::int32_t nm = 0, width = 0;
    is.read(reinterpret_cast<char*>(&nm), sizeof(nm));
    is.read(reinterpret_cast<char*>(&width), sizeof(width));
    if (!is || nm < 0 || width != kWidth)
        throw std::runtime_error("FloatSampler::load: incompatible table in " + path);
    FloatSampler fs;
    fs.rows_.resize(static_cast<std::size_t>(nm) + 1);
    for (Row& r : fs.rows_) {
        std::int32_t len = 0;
        std::int64_t e2 = 0;
        is.read(reinterpret_cast<char*>(&len), sizeof(len));
        is.read(reinterpret_cast<char*>(&e2), sizeof(e2));
        if (!is || len < 2 || len > kWidth + 1) throw std::runtime_error("FloatSampler::load: corrupt row");
        r.i.resize(static_cast<std::size_t>(len));
        is.read(reinterpret_cast<char*>(r.i.data()), static_cast<std::streamsize>(r.i.size() * sizeof(double)));
        if (!is) throw std::runtime_error("FloatSampler::load: truncated file");
        r.e2 = e2;
        fs.finish_row(r);
    }
    return fs;
}

std::optional<std::string> cache_dir_from_env() {
    const char* dir = std::getenv("TAMARILAB_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return std::string(dir);
}

FloatSampler FloatSampler::build_or_load(int n_max) {
    const auto dir = cache_dir_from_env();
    if (!dir) return build(n_max);
    const std::string path =
        *dir + "/tamari_float_counts_n" + std::to_string(n_max) + "_w" + std::to_string(kWidth) + ".bin";
    if (std::filesystem::exists(path)) {
        try {
            FloatSampler fs = load(path);
            if (fs.n_max() == n_max) return fs;
        } catch (const std::exception&) {
            // fall through and rebuild; the cache is best-effort
        }
    }
    FloatSampler fs = build(n_max);
    try {
        std::filesystem::create_directories(*dir);
        fs.save(path);
    } catch (const std::exception&) {
        // cache is best-effort; sampling works without it
    }
    return fs;
}

}  // namespace tamarilab
