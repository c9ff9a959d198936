#include "tamarilab/series.hpp"

#include <utility>
#include <vector>

namespace tamarilab {

PolySeries poly_as_series(const MultiPoly& p, std::string_view var, int order) {
    PolySeries r(std::string(var), order, MultiPoly(p.vars()));
    for (auto& [k, c] : p.collect_var(var)) {
        if (k < 0)
            throw std::logic_error("poly_as_series: negative power of " + std::string(var));
        if (k <= order) r.set(k, std::move(c));
    }
    return r;
}

PolySeries lift_series(const RatSeries& s, const VarTable& vars) {
    PolySeries r(s.var(), s.order(), MultiPoly(vars));
    for (int k = 0; k <= s.order(); ++k)
        if (s.at(k) != 0) r.set(k, MultiPoly::constant(vars, s.at(k)));
    return r;
}

RatSeries demote_series(const PolySeries& s) {
    RatSeries r(s.var(), s.order(), BigRat(0));
    for (int k = 0; k <= s.order(); ++k) r.set(k, s.at(k).constant_value());
    return r;
}

namespace {

// phi split by powers of the root variable, each coefficient as a series in
// the expansion variable.
using SplitPoly = std::vector<std::pair<int, PolySeries>>;

SplitPoly split_by_root(const MultiPoly& phi, std::string_view root_var, const std::string& zvar, int order) {
    SplitPoly out;
    for (auto& [k, c] : phi.collect_var(root_var)) {
        if (k < 0)
            throw std::logic_error("cannot substitute a series for a negative power of " + std::string(root_var));
        out.emplace_back(k, poly_as_series(c, zvar, order));
    }
    return out;
}

PolySeries eval_split(const SplitPoly& cs, const PolySeries& w) {
    PolySeries r(w.var(), w.order(), w.model());
    PolySeries wp = r;
    wp.set(0, MultiPoly::constant(w.model().vars(), BigRat(1)));
    int cur = 0;
    for (const auto& [k, a] : cs) {
        while (cur < k) {
            wp = wp * w;
            ++cur;
        }
        r += a * wp;
    }
    return r;
}

}  // namespace

PolySeries subst_series(const MultiPoly& phi, std::string_view var, const PolySeries& value) {
    if (!(phi.vars() == value.model().vars()))
        throw std::logic_error("subst_series: polynomial and series use different variable tables");
    return eval_split(split_by_root(phi, var, value.var(), value.order()), value);
}

PolySeries series_newton_root(const MultiPoly& phi, std::string_view root_var, const PolySeries& germ) {
    const int order = germ.order();
    const SplitPoly phi_s = split_by_root(phi, root_var, germ.var(), order);
    const SplitPoly dphi_s = split_by_root(phi.derivative(root_var), root_var, germ.var(), order);
    if (phi_s.empty() || phi_s.back().first == 0)
        throw std::logic_error("series_newton_root: equation does not involve " + std::string(root_var));

    PolySeries residual = eval_split(phi_s, germ);
    for (int k = 0; k <= std::min(1, order); ++k)
        if (!residual.at(k).is_zero())
            throw std::logic_error("series_newton_root: germ does not satisfy the equation through order 1; "
                                   "residual " + residual.str());
    if (!coeff_inverse(eval_split(dphi_s, germ).at(0)))
        throw std::logic_error("series_newton_root: root is not simple at the germ");

    PolySeries w = germ;
    // The germ is correct through order 1 and each step doubles that, but the
    // final exact residual check is what we actually rely on.
    int steps = 0;
    for (int reach = 2; reach <= order; reach *= 2) ++steps;
    for (int i = 0; i <= steps; ++i)
        w -= eval_split(phi_s, w) * eval_split(dphi_s, w).inverse();

    residual = eval_split(phi_s, w);
    for (int k = 0; k <= order; ++k)
        if (!residual.at(k).is_zero())
            throw std::logic_error("series_newton_root: nonzero residual at order " + std::to_string(k) +
                                   " after iteration; wrong germ or inconsistent equation");
    return w;
}

}  // namespace tamarilab
