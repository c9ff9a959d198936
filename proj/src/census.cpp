#include "tamarilab/census.hpp"

#include <map>
#include <tuple>
#include <utility>

namespace tamarilab {

namespace {

MultiPoly monomial(const VarTable& vt, std::initializer_list<std::pair<const char*, int>> exps,
                   long count) {
    MultiPoly mono = MultiPoly::constant(vt, BigRat(count));
    for (const auto& [name, e] : exps)
        if (e != 0) mono = mono * MultiPoly::variable(vt, name, e);
    return mono;
}

}  // namespace

std::vector<int> contact_positions(const DyckPath& p) {
    std::vector<int> out;
    const auto hts = p.heights();
    for (int i = 0; i < static_cast<int>(hts.size()); ++i)
        if (hts[static_cast<std::size_t>(i)] == 0) out.push_back(i);
    return out;
}

MultiPoly census_H(int n, const VarTable& vt) {
    TamariClosure closure(n);
    std::map<std::pair<int, int>, long> counts;
    for (const TamariInterval& iv : closure.intervals()) {
        const int c = iv.lower.contacts();
        const auto hts = iv.upper.heights();
        for (int i = 0; i <= 2 * n; ++i) ++counts[{c, hts[static_cast<std::size_t>(i)]}];
    }
    MultiPoly out(vt);
    for (const auto& [key, cnt] : counts)
        out += monomial(vt, {{"x", key.first}, {"s", key.second}}, cnt);
    return out;
}

MultiPoly census_G(int n, const VarTable& vt) {
    TamariClosure closure(n);
    std::map<std::tuple<int, int, int>, long> counts;
    for (const TamariInterval& iv : closure.intervals()) {
        const auto contacts = contact_positions(iv.lower);
        const auto hts = iv.lower.heights();
        for (int i = 0; i <= 2 * n; ++i) {
            int before = 0;
            while (before < static_cast<int>(contacts.size()) &&
                   contacts[static_cast<std::size_t>(before)] < i)
                ++before;
            const int after = static_cast<int>(contacts.size()) - before;
            ++counts[{before, after, hts[static_cast<std::size_t>(i)]}];
        }
    }
    MultiPoly out(vt);
    for (const auto& [key, cnt] : counts)
        out += monomial(vt, {{"x", std::get<0>(key)}, {"y", std::get<1>(key)}, {"w", std::get<2>(key)}},
                        cnt);
    return out;
}

MultiPoly census_M(int n, const VarTable& vt) {
    TamariClosure closure(n);
    std::map<std::tuple<int, int, int>, long> counts;
    for (const TamariInterval& iv : closure.intervals()) {
        const auto contacts = contact_positions(iv.lower);
        for (int j = 1; j <= n; ++j) {
            const int absc = iv.lower.upstep_start(j);
            int before = 0;
            while (before < static_cast<int>(contacts.size()) &&
                   contacts[static_cast<std::size_t>(before)] <= absc)
                ++before;
            const int after = static_cast<int>(contacts.size()) - before;
            const int wexp = iv.upper.upstep_height(j) - 3 * iv.lower.upstep_height(j);
            ++counts[{before, after, wexp}];
        }
    }
    MultiPoly out(vt);
    for (const auto& [key, cnt] : counts)
        out += monomial(vt, {{"x", std::get<0>(key)}, {"y", std::get<1>(key)}, {"w", std::get<2>(key)}},
                        cnt);
    return out;
}

BigRat eval_all_ones(const MultiPoly& p) {
    MultiPoly q = p;
    for (std::size_t v = 0; v < p.vars().size(); ++v) q = q.subst_one(p.vars().name(v));
    return q.constant_value();
}

}  // namespace tamarilab
