#pragma once

// Truncated power series with exact coefficients. The coefficient ring is
// either BigRat or MultiPoly (for series whose coefficients carry catalytic
// variables). A series knows its expansion variable and the highest exponent
// it is valid through; arithmetic tracks that bound pessimistically, so a
// coefficient you can read out of a TruncSeries is always exact.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tamarilab/multipoly.hpp"
#include "tamarilab/rational.hpp"

namespace tamarilab {

// Glue between the two coefficient rings.
inline BigRat coeff_zero_like(const BigRat&) { return BigRat(0); }
inline MultiPoly coeff_zero_like(const MultiPoly& m) { return MultiPoly(m.vars()); }
inline bool coeff_is_zero(const BigRat& c) { return c == 0; }
inline bool coeff_is_zero(const MultiPoly& c) { return c.is_zero(); }
inline std::optional<BigRat> coeff_inverse(const BigRat& c) {
    if (c == 0) return std::nullopt;
    return BigRat(1) / c;
}
inline std::optional<MultiPoly> coeff_inverse(const MultiPoly& c) { return c.try_inverse(); }
inline BigRat coeff_scaled(const BigRat& c, const BigRat& s) { return c * s; }
inline MultiPoly coeff_scaled(MultiPoly c, const BigRat& s) { return c.scale(s); }
inline std::string coeff_str(const BigRat& c) { return rat_string(c); }
inline std::string coeff_str(const MultiPoly& c) { return "(" + c.str() + ")"; }

template <typename C>
class TruncSeries {
public:
    // A fresh series is identically zero through `order`. `zero_model`
    // supplies the coefficient ring (for MultiPoly it carries the VarTable);
    // coefficients must never involve the expansion variable itself.
    TruncSeries(std::string var, int order, C zero_model)
        : var_(std::move(var)), order_(order), zero_(std::move(zero_model)),
          c_(static_cast<std::size_t>(order + 1), zero_) {
        if (order < 0) throw std::invalid_argument("TruncSeries: negative order");
        if (!coeff_is_zero(zero_)) throw std::invalid_argument("TruncSeries: zero model must be zero");
    }

    const std::string& var() const { return var_; }
    int order() const { return order_; }
    const C& model() const { return zero_; }

    const C& at(int k) const {
        if (k < 0 || k > order_) throw std::out_of_range("TruncSeries::at: exponent outside known range");
        return c_[static_cast<std::size_t>(k)];
    }
    void set(int k, C v) {
        if (k < 0 || k > order_) throw std::out_of_range("TruncSeries::set: exponent outside known range");
        c_[static_cast<std::size_t>(k)] = std::move(v);
    }

    // Index of the first nonzero coefficient; order()+1 when zero throughout
    // (which only means "zero as far as this truncation can see").
    int valuation() const {
        for (int k = 0; k <= order_; ++k)
            if (!coeff_is_zero(c_[static_cast<std::size_t>(k)])) return k;
        return order_ + 1;
    }
    bool is_zero() const { return valuation() > order_; }

    TruncSeries truncated(int new_order) const {
        if (new_order > order_) throw std::invalid_argument("TruncSeries::truncated: cannot extend");
        TruncSeries r(var_, new_order, zero_);
        for (int k = 0; k <= new_order; ++k) r.c_[static_cast<std::size_t>(k)] = c_[static_cast<std::size_t>(k)];
        return r;
    }

    TruncSeries& operator+=(const TruncSeries& o) {
        check_compatible(o);
        shrink_to(std::min(order_, o.order_));
        for (int k = 0; k <= order_; ++k) c_[static_cast<std::size_t>(k)] += o.c_[static_cast<std::size_t>(k)];
        return *this;
    }
    TruncSeries& operator-=(const TruncSeries& o) {
        check_compatible(o);
        shrink_to(std::min(order_, o.order_));
        for (int k = 0; k <= order_; ++k) c_[static_cast<std::size_t>(k)] -= o.c_[static_cast<std::size_t>(k)];
        return *this;
    }
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { a += b; return a; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { a -= b; return a; }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        a.check_compatible(b);
        TruncSeries r(a.var_, std::min(a.order_, b.order_), a.zero_);
        for (int i = 0; i <= r.order_; ++i) {
            if (coeff_is_zero(a.c_[static_cast<std::size_t>(i)])) continue;
            for (int j = 0; i + j <= r.order_ && j <= b.order_; ++j)
                r.c_[static_cast<std::size_t>(i + j)] +=
                    a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
        }
        return r;
    }

    TruncSeries operator-() const {
        TruncSeries r = *this;
        for (auto& c : r.c_) c = coeff_scaled(c, BigRat(-1));
        return r;
    }

    // Multiplies every coefficient by one ring element.
    TruncSeries scaled_by(const C& s) const {
        TruncSeries r = *this;
        for (auto& c : r.c_) c = c * s;
        return r;
    }
    TruncSeries scaled_rat(const BigRat& s) const {
        TruncSeries r = *this;
        for (auto& c : r.c_) c = coeff_scaled(c, s);
        return r;
    }

    // Multiplies by var^k. Shifting up extends the known order; shifting down
    // demands that the discarded low coefficients are zero (exact division).
    TruncSeries shifted(int k) const {
        if (k >= 0) {
            TruncSeries r(var_, order_ + k, zero_);
            for (int j = 0; j <= order_; ++j) r.c_[static_cast<std::size_t>(j + k)] = c_[static_cast<std::size_t>(j)];
            return r;
        }
        const int m = -k;
        if (m > order_) throw std::logic_error("TruncSeries::shifted: shift exceeds known order");
        for (int j = 0; j < m; ++j)
            if (!coeff_is_zero(c_[static_cast<std::size_t>(j)]))
                throw std::logic_error("TruncSeries::shifted: inexact division by " + var_ + "^" + std::to_string(m));
        TruncSeries r(var_, order_ - m, zero_);
        for (int j = 0; j <= r.order_; ++j) r.c_[static_cast<std::size_t>(j)] = c_[static_cast<std::size_t>(j + m)];
        return r;
    }

    // Multiplicative inverse; requires an invertible constant coefficient.
    TruncSeries inverse() const {
        auto inv0 = coeff_inverse(c_[0]);
        if (!inv0)
            throw std::logic_error("TruncSeries::inverse: constant coefficient not invertible: " + coeff_str(c_[0]));
        TruncSeries r(var_, order_, zero_);
        r.c_[0] = *inv0;
        for (int n = 1; n <= order_; ++n) {
            C acc = zero_;
            for (int k = 1; k <= n; ++k)
                acc += c_[static_cast<std::size_t>(k)] * r.c_[static_cast<std::size_t>(n - k)];
            r.c_[static_cast<std::size_t>(n)] = coeff_scaled(acc * *inv0, BigRat(-1));
        }
        return r;
    }

    friend TruncSeries operator/(const TruncSeries& a, const TruncSeries& b) { return a * b.inverse(); }

    // d/d(var); drops one order.
    TruncSeries derivative() const {
        if (order_ == 0) throw std::logic_error("TruncSeries::derivative: no known coefficients would remain");
        TruncSeries r(var_, order_ - 1, zero_);
        for (int k = 0; k <= r.order_; ++k)
            r.c_[static_cast<std::size_t>(k)] = coeff_scaled(c_[static_cast<std::size_t>(k + 1)], BigRat(k + 1));
        return r;
    }

    // Substitutes `inner` (a series in its own variable, with zero constant
    // term) for this series' variable. Known order: composing past
    // (order()+1) * valuation(inner) - 1 would need coefficients of *this
    // beyond the truncation, so the result stops at whichever bound bites.
    TruncSeries compose(const TruncSeries& inner) const {
        if (&inner.zero_ != &zero_ && !(coeff_zero_like(zero_) == coeff_zero_like(inner.zero_)))
            throw std::logic_error("TruncSeries::compose: coefficient rings differ");
        if (!coeff_is_zero(inner.c_[0]))
            throw std::logic_error("TruncSeries::compose: inner series has nonzero constant term");
        const int v = inner.valuation();
        int out_order = inner.order_;
        if (v <= inner.order_) {  // otherwise inner is zero: composite is just c_[0]
            long bound = static_cast<long>(order_ + 1) * v - 1;
            if (bound < out_order) out_order = static_cast<int>(bound);
        }
        TruncSeries g = inner.truncated(out_order);
        TruncSeries r(inner.var_, out_order, zero_);
        r.c_[0] = c_[static_cast<std::size_t>(order_)];
        for (int k = order_ - 1; k >= 0; --k) {
            r = r * g;
            r.c_[0] += c_[static_cast<std::size_t>(k)];
        }
        return r;
    }

    bool operator==(const TruncSeries& o) const {
        return var_ == o.var_ && order_ == o.order_ && c_ == o.c_;
    }

    std::string str() const {
        std::string s;
        bool any = false;
        for (int k = 0; k <= order_; ++k) {
            const C& c = c_[static_cast<std::size_t>(k)];
            if (coeff_is_zero(c)) continue;
            if (any) s += " + ";
            s += coeff_str(c);
            if (k > 0) s += "*" + var_ + (k > 1 ? "^" + std::to_string(k) : "");
            any = true;
        }
        if (!any) s = "0";
        return s + " + O(" + var_ + "^" + std::to_string(order_ + 1) + ")";
    }

private:
    void check_compatible(const TruncSeries& o) const {
        if (var_ != o.var_) throw std::logic_error("TruncSeries: mixing variables " + var_ + " and " + o.var_);
    }
    void shrink_to(int new_order) {
        order_ = new_order;
        c_.resize(static_cast<std::size_t>(new_order + 1));
    }

    std::string var_;
    int order_;
    C zero_;
    std::vector<C> c_;
};

using RatSeries = TruncSeries<BigRat>;
using PolySeries = TruncSeries<MultiPoly>;

// Reads a polynomial as a series in one of its variables, keeping the other
// variables inside the coefficients. Exponents of `var` above `order` are
// dropped; negative ones are rejected.
PolySeries poly_as_series(const MultiPoly& p, std::string_view var, int order);

// Widens rational coefficients into the given polynomial ring.
PolySeries lift_series(const RatSeries& s, const VarTable& vars);

// Collapses polynomial coefficients that happen to be constants.
RatSeries demote_series(const PolySeries& s);

// Substitutes `value` for one variable of `phi` (Horner). Occurrences of the
// series' own expansion variable inside phi move into the series index; any
// remaining variables ride along inside the coefficients.
PolySeries subst_series(const MultiPoly& phi, std::string_view var, const PolySeries& value);

// Solves phi(root_var, ...) = 0 for root_var as a power series in germ.var(),
// by Newton iteration starting from `germ`. The germ must already satisfy
// phi = 0 through order 1 and make d(phi)/d(root_var) invertible at order 0;
// the returned series is re-substituted and verified to kill phi through the
// germ's order, so a wrong branch or an inconsistent equation throws instead
// of returning garbage.
PolySeries series_newton_root(const MultiPoly& phi, std::string_view root_var, const PolySeries& germ);

}  // namespace tamarilab
