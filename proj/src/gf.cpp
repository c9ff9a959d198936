#include "tamarilab/gf.hpp"

#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tamarilab {

namespace {

VarTable vars_for(GFTag tag, int moment_order) {
    const bool full = moment_order < 0;
    switch (tag) {
        case GFTag::F:
            return VarTable{"x"};
        case GFTag::H:
            return full ? VarTable{"x", "s"} : VarTable{"x", "sigma"};
        case GFTag::G:
            return full ? VarTable{"x", "y", "w"} : VarTable{"x", "y", "omega"};
        case GFTag::M:
            return full ? VarTable::with_laurent({"x", "y", "w"}, {"w"})
                        : VarTable{"x", "y", "omega"};
    }
    throw std::logic_error("vars_for: bad tag");
}

int cap_for(GFTag tag, int moment_order) {
    if (tag == GFTag::F || tag == GFTag::H) return kGFBivariateCap;
    return moment_order < 0 ? kGFTrivariateCap : kGFBivariateCap;
}

const char* tag_name(GFTag tag) {
    switch (tag) {
        case GFTag::F: return "F";
        case GFTag::H: return "H";
        case GFTag::G: return "G";
        case GFTag::M: return "M";
    }
    return "?";
}

// Rebuilds p's terms in another variable table, optionally renaming one
// variable on the way (used to read F's x-polynomials as polynomials in y).
MultiPoly lift(const MultiPoly& p, const VarTable& vt, const std::string& from = "",
               const std::string& to = "") {
    MultiPoly out(vt);
    for (const auto& [exps, c] : p.terms()) {
        MultiPoly mono = MultiPoly::constant(vt, c);
        for (std::size_t i = 0; i < p.vars().size(); ++i) {
            if (exps[i] == 0) continue;
            const std::string& nm = p.vars().name(i);
            mono = mono * MultiPoly::variable(vt, nm == from ? to : nm, exps[i]);
        }
        out += mono;
    }
    return out;
}

// Shared iteration state. F and the arrays derived from it are cheap next to
// the target coefficients, so resuming from a snapshot replays only these.
struct Iter {
    GFTag tag;
    int K;  // moment truncation order, -1 for full polynomials
    VarTable vt;
    std::string hvar;             // height variable ("s"/"w" or "sigma"/"omega")
    std::vector<MultiPoly> F;     // F_a in vt (x only)
    std::vector<MultiPoly> dF;    // divided difference of F_a in x
    std::vector<MultiPoly> Fy;    // F_a with x renamed to y
    std::vector<BigRat> F1;       // F_a at x = 1
    std::vector<MultiPoly> ddFx;  // (F_a(x) - F_a(1)) / (x - 1)
    std::vector<MultiPoly> ddFy;  // (F_a(y) - y F_a(1)) / (y - 1)
    std::vector<MultiPoly> dA;    // divided difference of H_a in x (H only)
    std::vector<MultiPoly> A;     // target coefficients
    MultiPoly winv2;              // moment mode: (1 + omega)^-2 truncated

    Iter(GFTag t, int moment_order) : tag(t), K(moment_order), vt(vars_for(t, moment_order)) {
        switch (tag) {
            case GFTag::F:
                A.push_back(MultiPoly::variable(vt, "x"));
                break;
            case GFTag::H:
                A.push_back(MultiPoly::variable(vt, "x"));
                hvar = K < 0 ? "s" : "sigma";
                break;
            case GFTag::G:
                A.push_back(MultiPoly::variable(vt, "y"));
                hvar = K < 0 ? "w" : "omega";
                break;
            case GFTag::M:
                A.push_back(MultiPoly(vt));
                hvar = K < 0 ? "w" : "omega";
                break;
        }
        if (tag == GFTag::M && K >= 0) {
            // (1 + omega)^-2 = sum (-1)^j (j+1) omega^j, truncated.
            winv2 = MultiPoly(vt);
            for (int j = 0; j <= K; ++j) {
                const BigRat c = (j % 2 == 0) ? BigRat(j + 1) : BigRat(-(j + 1));
                winv2 += j == 0 ? MultiPoly::constant(vt, c)
                                : MultiPoly::variable(vt, "omega", j).scale(c);
            }
        }
    }

    // Multiplies by the height variable: s (or w) in full mode, the
    // truncated 1 + sigma (or 1 + omega) in moment mode. Truncation is safe
    // because no factor carries negative shifted-variable degree, so dropped
    // terms can never feed back below the cutoff.
    MultiPoly times_height(const MultiPoly& p) const {
        if (K < 0) return p.shift_var(hvar, 1);
        return (p + p.shift_var(hvar, 1)).truncate_var(hvar, K);
    }

    MultiPoly times_winv2(const MultiPoly& p) const {
        if (K < 0) return p.shift_var("w", -2);
        return (p * winv2).truncate_var("omega", K);
    }

    void ensure_f(int upto) {
        if (F.empty()) F.push_back(MultiPoly::variable(vt, "x"));
        while (static_cast<int>(F.size()) <= upto) {
            const int n = static_cast<int>(F.size()) - 1;
            while (dF.size() < F.size()) dF.push_back(F[dF.size()].divided_difference("x"));
            MultiPoly next(vt);
            for (int a = 0; a <= n; ++a)
                next += dF[static_cast<std::size_t>(a)] * F[static_cast<std::size_t>(n - a)];
            F.push_back(std::move(next));
        }
        while (dF.size() < F.size()) dF.push_back(F[dF.size()].divided_difference("x"));
        if (tag != GFTag::G && tag != GFTag::M) return;
        while (Fy.size() < F.size()) {
            const std::size_t a = Fy.size();
            Fy.push_back(lift(F[a], vt, "x", "y"));
            F1.push_back(F[a].subst_one("x").constant_value());
            ddFx.push_back((F[a] - MultiPoly::constant(vt, F1[a])).div_var_minus_one_exact("x"));
            ddFy.push_back(
                (Fy[a] - MultiPoly::variable(vt, "y").scale(F1[a])).div_var_minus_one_exact("y"));
        }
    }

    // Appends [t^{n+1}] from the orders already present.
    void advance() {
        const int n = static_cast<int>(A.size()) - 1;
        ensure_f(n + 1);
        MultiPoly next(vt);
        switch (tag) {
            case GFTag::F: {
                for (int a = 0; a <= n; ++a)
                    next += dF[static_cast<std::size_t>(a)] * A[static_cast<std::size_t>(n - a)];
                break;
            }
            case GFTag::H: {
                while (dA.size() < A.size()) dA.push_back(A[dA.size()].divided_difference("x"));
                next = F[static_cast<std::size_t>(n + 1)];
                for (int a = 0; a <= n; ++a) {
                    const std::size_t sa = static_cast<std::size_t>(a), sb = static_cast<std::size_t>(n - a);
                    // Marked abscissa inside the first part (one level up) or
                    // in the second part.
                    next += times_height(dA[sa] * F[sb]);
                    next += dF[sa] * A[sb];
                }
                break;
            }
            case GFTag::G: {
                next = Fy[static_cast<std::size_t>(n + 1)];
                for (int a = 0; a <= n; ++a) {
                    const std::size_t sa = static_cast<std::size_t>(a), sb = static_cast<std::size_t>(n - a);
                    const MultiPoly& Ga = A[sa];
                    const MultiPoly G1y = Ga.subst_one("x");
                    const MultiPoly G11 = G1y.subst_one("y");
                    // Abscissa strictly inside the shell of the first part.
                    next += times_height((G1y - G11).div_var_minus_one_exact("y") * Fy[sb])
                                .shift_var("x", 1);
                    // On the shell's closing descent.
                    next += (ddFy[sa] * Fy[sb]).shift_var("x", 1);
                    // At a contact of the first part other than its start;
                    // the y/x correction removes the marked-at-the-end case.
                    const MultiPoly Gt =
                        Ga - lift(F[sa].shift_var("x", -1), vt) * MultiPoly::variable(vt, "y");
                    const MultiPoly Gt1 = G1y - MultiPoly::variable(vt, "y").scale(F1[sa]);
                    next += ((Gt - Gt1).div_var_minus_one_exact("x").shift_var("y", -1) * Fy[sb])
                                .shift_var("x", 2);
                    // In the second part.
                    next += (ddFx[sa] * A[sb]).shift_var("x", 1);
                }
                break;
            }
            case GFTag::M: {
                next = Fy[static_cast<std::size_t>(n + 1)].shift_var("y", -1).shift_var("x", 1);
                for (int a = 0; a <= n; ++a) {
                    const std::size_t sa = static_cast<std::size_t>(a), sb = static_cast<std::size_t>(n - a);
                    const MultiPoly& Ma = A[sa];
                    const MultiPoly M1y = Ma.subst_one("x");
                    const MultiPoly M11 = M1y.subst_one("y");
                    // Up-step inside the first part, at the junction, or in
                    // the second part; the shell shifts the two tilde heights
                    // by (+1, +1), (0, +1), (0, 0) respectively.
                    next += times_winv2((M1y - M11).div_var_minus_one_exact("y") * Fy[sb])
                                .shift_var("x", 1);
                    next += times_height(
                                (Ma - M1y).div_var_minus_one_exact("x").shift_var("y", -1) * Fy[sb])
                                .shift_var("x", 2);
                    next += (ddFx[sa] * A[sb]).shift_var("x", 1);
                }
                break;
            }
        }
        A.push_back(std::move(next));
    }
};

GFArray run(GFTag tag, int n_max, int moment_order) {
    if (n_max < 0) throw std::invalid_argument("gf: negative truncation order");
    if (n_max > cap_for(tag, moment_order))
        throw std::invalid_argument(std::string("gf: order beyond the ") + tag_name(tag) +
                                    " cap; use moment mode or raise the cap deliberately");
    Iter it(tag, moment_order);
    while (static_cast<int>(it.A.size()) <= n_max) it.advance();
    return GFArray{tag, it.vt, std::move(it.A), moment_order};
}

}  // namespace

const MultiPoly& GFArray::at(int n) const {
    if (n < 0 || n > order()) throw std::out_of_range("GFArray::at: order not computed");
    return coeff[static_cast<std::size_t>(n)];
}

GFArray iterate_F(int n_max) { return run(GFTag::F, n_max, -1); }
GFArray iterate_H(int n_max, int moment_order) { return run(GFTag::H, n_max, moment_order); }
GFArray iterate_G(int n_max, int moment_order) { return run(GFTag::G, n_max, moment_order); }
GFArray iterate_M(int n_max, int moment_order) { return run(GFTag::M, n_max, moment_order); }

GFArray gf_extend(GFArray array, int n_max) {
    if (array.coeff.empty() || !(array.vars == vars_for(array.tag, array.moment_order)))
        throw std::invalid_argument("gf_extend: array does not match its tag's variable layout");
    if (n_max <= array.order()) return array;
    if (n_max > cap_for(array.tag, array.moment_order))
        throw std::invalid_argument("gf_extend: order beyond the array's cap");
    Iter it(array.tag, array.moment_order);
    if (!(array.coeff[0] == it.A[0]))
        throw std::invalid_argument("gf_extend: array does not start from the equation's seed");
    it.A = std::move(array.coeff);
    while (static_cast<int>(it.A.size()) <= n_max) it.advance();
    return GFArray{array.tag, it.vt, std::move(it.A), array.moment_order};
}

RatSeries factorial_moment_series(const GFArray& array, const std::string& var, int k) {
    if (k < 0) throw std::invalid_argument("factorial_moment_series: negative derivative order");
    if (array.tag == GFTag::F)
        throw std::invalid_argument("factorial_moment_series: F carries no height variable");
    const std::string expect = array.tag == GFTag::H ? "s" : "w";
    if (var != expect)
        throw std::invalid_argument("factorial_moment_series: this array's height variable is " + expect);
    RatSeries out("t", array.order(), BigRat(0));
    if (array.moment_order >= 0) {
        if (k > array.moment_order)
            throw std::invalid_argument(
                "factorial_moment_series: moment-mode array truncated below this derivative order");
        const std::string hv = array.tag == GFTag::H ? "sigma" : "omega";
        const BigRat kfact(factorial(static_cast<unsigned long>(k)));
        for (int n = 0; n <= array.order(); ++n) {
            MultiPoly p = array.at(n).subst_one("x");
            if (array.vars.index("y") >= 0) p = p.subst_one("y");
            out.set(n, p.coeff({{hv, k}}) * kfact);
        }
    } else {
        for (int n = 0; n <= array.order(); ++n) {
            MultiPoly p = array.at(n);
            for (int i = 0; i < k; ++i) p = p.derivative(var);
            for (std::size_t v = 0; v < array.vars.size(); ++v) p = p.subst_one(array.vars.name(v));
            out.set(n, p.constant_value());
        }
    }
    return out;
}

std::string factorial_moment_csv(const GFArray& array, const std::string& var, int k_max) {
    if (k_max < 0) throw std::invalid_argument("factorial_moment_csv: negative order");
    std::vector<RatSeries> per_k;
    per_k.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) per_k.push_back(factorial_moment_series(array, var, k));
    std::ostringstream os;
    os << "n,k,numerator,denominator\n";
    for (int n = 0; n <= array.order(); ++n)
        for (int k = 0; k <= k_max; ++k) {
            const BigRat v = per_k[static_cast<std::size_t>(k)].at(n);
            os << n << ',' << k << ',' << v.get_num().get_str() << ',' << v.get_den().get_str()
               << '\n';
        }
    return os.str();
}

std::string gf_snapshot_json(const GFArray& array) {
    nlohmann::json j;
    j["tag"] = tag_name(array.tag);
    j["moment_order"] = array.moment_order;
    std::vector<std::string> cs;
    cs.reserve(array.coeff.size());
    for (const MultiPoly& p : array.coeff) cs.push_back(p.str());
    j["coeff"] = cs;
    return j.dump(1);
}

GFArray gf_from_snapshot_json(const std::string& text) {
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        const std::string tag_s = j.at("tag").get<std::string>();
        GFTag tag;
        if (tag_s == "F") tag = GFTag::F;
        else if (tag_s == "H") tag = GFTag::H;
        else if (tag_s == "G") tag = GFTag::G;
        else if (tag_s == "M") tag = GFTag::M;
        else throw std::invalid_argument("gf_from_snapshot_json: unknown tag " + tag_s);
        const int moment_order = j.at("moment_order").get<int>();
        GFArray out;
        out.tag = tag;
        out.moment_order = moment_order;
        out.vars = vars_for(tag, moment_order);
        for (const auto& s : j.at("coeff"))
            out.coeff.push_back(MultiPoly::parse(out.vars, s.get<std::string>()));
        if (out.coeff.empty()) throw std::invalid_argument("gf_from_snapshot_json: empty array");
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("gf_from_snapshot_json: malformed snapshot: ") +
                                    e.what());
    }
}

}  // namespace tamarilab
