#include "tamarilab/decomp.hpp"

#include <sstream>
#include <stdexcept>

namespace tamarilab {

namespace {

// First strictly positive abscissa where the path touches zero.
int first_return(const DyckPath& p) {
    int h = 0;
    for (int i = 0; i < p.length(); ++i) {
        h += p.up(i) ? 1 : -1;
        if (h == 0) return i + 1;
    }
    throw std::invalid_argument("first_return: empty path");
}

DyckPath slice(const DyckPath& p, int from, int to) {  // steps [from, to)
    std::vector<bool> ups;
    ups.reserve(static_cast<std::size_t>(to - from));
    for (int i = from; i < to; ++i) ups.push_back(p.up(i));
    return DyckPath(std::move(ups));
}

// Abscissa of the m-th contact (m = 1 is the start).
int contact_abscissa(const DyckPath& p, int m) {
    int h = 0, seen = 1;
    if (m == 1) return 0;
    for (int i = 0; i < p.length(); ++i) {
        h += p.up(i) ? 1 : -1;
        if (h == 0 && ++seen == m) return i + 1;
    }
    throw std::invalid_argument("contact_abscissa: mark beyond last contact");
}

}  // namespace

DecompStep decompose(const TamariInterval& iv) {
    if (iv.lower.size() == 0) throw std::invalid_argument("decompose: empty interval");
    if (iv.lower.size() != iv.upper.size()) throw std::invalid_argument("decompose: size mismatch");
    const DyckPath& p = iv.lower;
    const DyckPath& q = iv.upper;
    const int i2 = first_return(q);
    const int i1 = first_return(p);
    // Tamari comparability forces every contact of Q to be one of P.
    if (i1 > i2) throw std::invalid_argument("decompose: paths are not Tamari-comparable");

    DyckPath q1 = slice(q, 1, i2 - 1);
    DyckPath q2 = slice(q, i2, q.length());
    DyckPath p1_head = slice(p, 1, i1 - 1);     // before the borrowed down-step
    DyckPath p1_tail = slice(p, i1, i2);        // between the two returns
    DyckPath p2 = slice(p, i2, p.length());

    std::vector<bool> joined;
    joined.reserve(static_cast<std::size_t>(p1_head.length() + p1_tail.length()));
    for (int i = 0; i < p1_head.length(); ++i) joined.push_back(p1_head.up(i));
    for (int i = 0; i < p1_tail.length(); ++i) joined.push_back(p1_tail.up(i));
    DyckPath p1(std::move(joined));

    return {{{std::move(p1), std::move(q1)}, p1_head.contacts()}, {std::move(p2), std::move(q2)}};
}

TamariInterval compose(const DecompStep& ds) {
    const DyckPath& p1 = ds.first.interval.lower;
    const DyckPath& q1 = ds.first.interval.upper;
    const DyckPath& p2 = ds.second.lower;
    const DyckPath& q2 = ds.second.upper;
    if (p1.size() != q1.size() || p2.size() != q2.size())
        throw std::invalid_argument("compose: component size mismatch");
    const int k = p1.contacts();
    if (ds.first.mark < 1 || ds.first.mark > k) throw std::invalid_argument("compose: mark out of range");
    const int cut = contact_abscissa(p1, ds.first.mark);

    std::vector<bool> lower;
    lower.reserve(static_cast<std::size_t>(p1.length() + p2.length()) + 2);
    lower.push_back(true);
    for (int i = 0; i < cut; ++i) lower.push_back(p1.up(i));
    lower.push_back(false);
    for (int i = cut; i < p1.length(); ++i) lower.push_back(p1.up(i));
    for (int i = 0; i < p2.length(); ++i) lower.push_back(p2.up(i));

    std::vector<bool> upper;
    upper.reserve(static_cast<std::size_t>(q1.length() + q2.length()) + 2);
    upper.push_back(true);
    for (int i = 0; i < q1.length(); ++i) upper.push_back(q1.up(i));
    upper.push_back(false);
    for (int i = 0; i < q2.length(); ++i) upper.push_back(q2.up(i));

    return {DyckPath(std::move(lower)), DyckPath(std::move(upper))};
}

const BigInt CountTable::kZero = 0;

CountTable CountTable::build(int n_max) {
    if (n_max < 0) throw std::invalid_argument("CountTable::build: negative size");
    CountTable t;
    t.rows_.resize(static_cast<std::size_t>(n_max) + 1);
    t.suffix_.resize(static_cast<std::size_t>(n_max) + 1);
    t.rows_[0] = {BigInt(0), BigInt(1)};  // the empty interval has one contact

    auto fill_suffix = [&](int n) {
        const auto& row = t.rows_[static_cast<std::size_t>(n)];
        auto& s = t.suffix_[static_cast<std::size_t>(n)];
        s.assign(row.size(), BigInt(0));
        for (int j = static_cast<int>(row.size()) - 1; j >= 1; --j) {
            s[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j)];
            if (j + 1 < static_cast<int>(row.size())) s[static_cast<std::size_t>(j)] += s[static_cast<std::size_t>(j) + 1];
        }
    };
    fill_suffix(0);

    for (int n = 0; n < n_max; ++n) {
        std::vector<BigInt> next(static_cast<std::size_t>(n) + 3, BigInt(0));
        for (int a = 0; a <= n; ++a) {
            const int b = n - a;
            const auto& s = t.suffix_[static_cast<std::size_t>(a)];
            const auto& rb = t.rows_[static_cast<std::size_t>(b)];
            for (int j = 1; j < static_cast<int>(s.size()); ++j) {
                if (s[static_cast<std::size_t>(j)] == 0) continue;
                for (int jp = 1; jp < static_cast<int>(rb.size()); ++jp) {
                    if (rb[static_cast<std::size_t>(jp)] == 0) continue;
                    next[static_cast<std::size_t>(j + jp)] += s[static_cast<std::size_t>(j)] * rb[static_cast<std::size_t>(jp)];
                }
            }
        }
        t.rows_[static_cast<std::size_t>(n) + 1] = std::move(next);
        fill_suffix(n + 1);
    }
    return t;
}

const BigInt& CountTable::count(int n, int k) const {
    if (n < 0 || n > n_max()) throw std::out_of_range("CountTable::count: row not built");
    const auto& row = rows_[static_cast<std::size_t>(n)];
    if (k < 1 || k >= static_cast<int>(row.size())) return kZero;
    return row[static_cast<std::size_t>(k)];
}

const BigInt& CountTable::suffix(int n, int j) const {
    if (n < 0 || n > n_max()) throw std::out_of_range("CountTable::suffix: row not built");
    const auto& s = suffix_[static_cast<std::size_t>(n)];
    if (j < 1 || j >= static_cast<int>(s.size())) return kZero;
    return s[static_cast<std::size_t>(j)];
}

const std::vector<BigInt>& CountTable::row(int n) const {
    if (n < 0 || n > n_max()) throw std::out_of_range("CountTable::row: row not built");
    return rows_[static_cast<std::size_t>(n)];
}

BigInt CountTable::row_sum(int n) const {
    BigInt s = 0;
    for (const auto& v : row(n)) s += v;
    return s;
}

BigInt CountTable::marked_sum(int n) const {
    const auto& r = row(n);
    BigInt s = 0;
    for (int k = 1; k < static_cast<int>(r.size()); ++k) s += k * r[static_cast<std::size_t>(k)];
    return s;
}

std::string CountTable::to_csv() const {
    std::ostringstream os;
    os << "n,k,count\n";
    for (int n = 0; n <= n_max(); ++n) {
        const auto& r = row(n);
        for (int k = 1; k < static_cast<int>(r.size()); ++k)
            if (r[static_cast<std::size_t>(k)] != 0)
                os << n << "," << k << "," << r[static_cast<std::size_t>(k)].get_str() << "\n";
    }
    return os.str();
}

}  // namespace tamarilab
