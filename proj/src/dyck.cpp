#include "tamarilab/dyck.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tamarilab {

DyckPath::DyckPath(std::vector<bool> ups) : ups_(std::move(ups)) {
    int h = 0;
    for (bool u : ups_) {
        h += u ? 1 : -1;
        if (h < 0) throw std::invalid_argument("DyckPath: prefix dips below zero");
    }
    if (h != 0) throw std::invalid_argument("DyckPath: unbalanced steps");
}

DyckPath DyckPath::parse(std::string_view s) {
    std::vector<bool> ups;
    ups.reserve(s.size());
    for (char c : s) {
        if (c == 'U' || c == 'u') ups.push_back(true);
        else if (c == 'D' || c == 'd') ups.push_back(false);
        else throw std::invalid_argument("DyckPath::parse: expected U or D, got '" + std::string(1, c) + "'");
    }
    return DyckPath(std::move(ups));
}

int DyckPath::height_at(int i) const {
    if (i < 0 || i > length()) throw std::out_of_range("DyckPath::height_at: abscissa out of range");
    int h = 0;
    for (int k = 0; k < i; ++k) h += ups_[static_cast<std::size_t>(k)] ? 1 : -1;
    return h;
}

std::vector<int> DyckPath::heights() const {
    std::vector<int> h(static_cast<std::size_t>(length()) + 1, 0);
    for (int k = 0; k < length(); ++k)
        h[static_cast<std::size_t>(k + 1)] = h[static_cast<std::size_t>(k)] + (ups_[static_cast<std::size_t>(k)] ? 1 : -1);
    return h;
}

int DyckPath::upstep_start(int j) const {
    if (j < 1 || j > size()) throw std::out_of_range("DyckPath::upstep_start: index out of range");
    int seen = 0;
    for (int k = 0; k < length(); ++k)
        if (ups_[static_cast<std::size_t>(k)] && ++seen == j) return k;
    throw std::logic_error("DyckPath::upstep_start: unreachable");
}

int DyckPath::upstep_height(int j) const { return height_at(upstep_start(j)); }

int DyckPath::matching_down_start(int i) const {
    if (i < 0 || i >= length() || !ups_[static_cast<std::size_t>(i)])
        throw std::invalid_argument("DyckPath::matching_down_start: not an up-step");
    int h = 1;
    for (int m = i + 1; m < length(); ++m) {
        h += ups_[static_cast<std::size_t>(m)] ? 1 : -1;
        if (h == 0) return m;
    }
    throw std::logic_error("DyckPath::matching_down_start: unreachable for a valid path");
}

int DyckPath::contacts() const {
    int h = 0, c = 1;
    for (bool u : ups_) {
        h += u ? 1 : -1;
        if (h == 0) ++c;
    }
    return c;
}

std::string DyckPath::str() const {
    std::string s;
    s.reserve(ups_.size());
    for (bool u : ups_) s += u ? 'U' : 'D';
    return s;
}

namespace {

void gen_paths(int ups_left, int downs_left, std::vector<bool>& cur, std::vector<DyckPath>& out) {
    if (ups_left == 0 && downs_left == 0) {
        out.emplace_back(DyckPath(cur));
        return;
    }
    if (downs_left > ups_left) {  // a down-step keeps the prefix valid
        cur.push_back(false);
        gen_paths(ups_left, downs_left - 1, cur, out);
        cur.pop_back();
    }
    if (ups_left > 0) {
        cur.push_back(true);
        gen_paths(ups_left - 1, downs_left, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<DyckPath> all_dyck_paths(int n) {
    if (n < 0) throw std::invalid_argument("all_dyck_paths: negative size");
    std::vector<DyckPath> out;
    std::vector<bool> cur;
    cur.reserve(static_cast<std::size_t>(2 * n));
    gen_paths(n, n, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

bool pointwise_leq(const DyckPath& p, const DyckPath& q) {
    if (p.size() != q.size()) return false;
    int hp = 0, hq = 0;
    for (int i = 0; i < p.length(); ++i) {
        hp += p.up(i) ? 1 : -1;
        hq += q.up(i) ? 1 : -1;
        if (hq < hp) return false;
    }
    return true;
}

std::vector<DyckPath> covering_successors(const DyckPath& p) {
    std::vector<DyckPath> out;
    const int len = p.length();
    for (int i = 0; i + 1 < len; ++i) {
        if (p.up(i) || !p.up(i + 1)) continue;  // need a down-step followed by an up-step
        // The shortest excursion after the down-step spans steps i+1 .. m,
        // where m is the matching down-step of the up-step at i+1.
        const int m = p.matching_down_start(i + 1);
        std::vector<bool> ups;
        ups.reserve(static_cast<std::size_t>(len));
        for (int k = 0; k < i; ++k) ups.push_back(p.up(k));
        for (int k = i + 1; k <= m; ++k) ups.push_back(p.up(k));
        ups.push_back(false);
        for (int k = m + 1; k < len; ++k) ups.push_back(p.up(k));
        out.emplace_back(DyckPath(std::move(ups)));
    }
    return out;
}

BigInt interval_count_formula(int n) {
    if (n < 0) throw std::invalid_argument("interval_count_formula: negative size");
    if (n == 0) return 1;
    BigRat c = make_rat(2 * binomial(4ul * static_cast<unsigned long>(n) + 1,
                                     static_cast<unsigned long>(n - 1)),
                        BigInt(n) * (n + 1));
    if (!is_integer(c)) throw std::logic_error("interval_count_formula: non-integer value");
    return BigInt(c.get_num());
}

BigInt catalan(int n) {
    if (n < 0) throw std::invalid_argument("catalan: negative size");
    BigRat c = make_rat(binomial(2ul * static_cast<unsigned long>(n), static_cast<unsigned long>(n)),
                        BigInt(n + 1));
    if (!is_integer(c)) throw std::logic_error("catalan: non-integer value");
    return BigInt(c.get_num());
}

TamariClosure::TamariClosure(int n, int cap) : n_(n) {
    if (n < 0) throw std::invalid_argument("TamariClosure: negative size");
    if (n > cap) throw std::invalid_argument("TamariClosure: size " + std::to_string(n) +
                                             " above brute-force cap " + std::to_string(cap));
    paths_ = all_dyck_paths(n);  // sorted
    std::map<DyckPath, int> ids;
    for (std::size_t i = 0; i < paths_.size(); ++i) ids.emplace(paths_[i], static_cast<int>(i));

    auto potential = [](const DyckPath& p) {
        long s = 0;
        int h = 0;
        for (int i = 0; i < p.length(); ++i) {
            h += p.up(i) ? 1 : -1;
            s += h;
        }
        return s;
    };

    succ_.resize(paths_.size());
    for (std::size_t i = 0; i < paths_.size(); ++i) {
        for (const DyckPath& q : covering_successors(paths_[i])) {
            if (potential(q) <= potential(paths_[i]))
                throw std::logic_error("TamariClosure: covering move failed to raise the height potential");
            succ_[i].push_back(ids.at(q));
        }
    }

    upset_.resize(paths_.size());
    std::vector<char> seen(paths_.size());
    std::vector<int> stack;
    for (std::size_t i = 0; i < paths_.size(); ++i) {
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(1, static_cast<int>(i));
        seen[i] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            upset_[i].push_back(v);
            for (int w : succ_[static_cast<std::size_t>(v)])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(upset_[i].begin(), upset_[i].end());
    }
}

int TamariClosure::id(const DyckPath& p) const {
    auto it = std::lower_bound(paths_.begin(), paths_.end(), p);
    if (it == paths_.end() || *it != p) throw std::invalid_argument("TamariClosure::id: path of wrong size");
    return static_cast<int>(it - paths_.begin());
}

bool TamariClosure::leq(const DyckPath& p, const DyckPath& q) const {
    const auto& up = upset_[static_cast<std::size_t>(id(p))];
    return std::binary_search(up.begin(), up.end(), id(q));
}

BigInt TamariClosure::num_intervals() const {
    BigInt total = 0;
    for (const auto& up : upset_) total += static_cast<unsigned long>(up.size());
    return total;
}

std::vector<TamariInterval> TamariClosure::intervals() const {
    std::vector<TamariInterval> out;
    for (std::size_t i = 0; i < paths_.size(); ++i)
        for (int q : upset_[i]) out.push_back({paths_[i], paths_[static_cast<std::size_t>(q)]});
    return out;
}

CoupleDraw couple_abscissa(const DyckPath& p, Rng& rng) {
    if (p.size() == 0) throw std::invalid_argument("couple_abscissa: empty path");
    const int j = rng.uniform_int(1, p.size());
    const int i1 = p.upstep_start(j);
    const int i2 = p.matching_down_start(i1);
    return {rng.coin() ? i2 : i1, j};
}

DyckPath random_dyck_path(int n, Rng& rng) {
    if (n < 0) throw std::invalid_argument("random_dyck_path: negative size");
    const int len = 2 * n + 1;
    std::vector<bool> s(static_cast<std::size_t>(len), false);
    for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = true;
    for (int i = len - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
        const bool tmp = s[static_cast<std::size_t>(i)];
        s[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(j)];
        s[static_cast<std::size_t>(j)] = tmp;
    }

    // First vertex achieving the walk's minimum; starting the rotation there
    // keeps every proper prefix nonnegative, and pushes the step into the
    // minimum (necessarily a down-step) to the very end.
    int h = 0, low = 0, m = 0;
    for (int i = 0; i < len; ++i) {
        h += s[static_cast<std::size_t>(i)] ? 1 : -1;
        if (h < low) {
            low = h;
            m = i + 1;
        }
    }

    std::vector<bool> ups;
    ups.reserve(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < 2 * n; ++i) ups.push_back(s[static_cast<std::size_t>((m + i) % len)]);
    return DyckPath(std::move(ups));  // the constructor re-checks the Dyck property
}

}  // namespace tamarilab
