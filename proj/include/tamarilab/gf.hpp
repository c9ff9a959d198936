#pragma once

// Order-by-order iteration of the catalytic functional equations behind the
// interval statistics. Each array holds exact [t^n] coefficients as
// polynomials in the equation's auxiliary variables:
//   F(t; x)        contact count of the lower path,
//   H(t; x, s)     plus the upper-path height at a uniformly marked abscissa,
//   G(t; x, y, w)  contacts split strictly-before / weakly-after a marked
//                  abscissa, with the lower-path height there in w,
//   M(t; x, y, w)  the same split at the lower path's j-th up-step, with
//                  w^(q - 3p) for the two up-step heights (Laurent in w).
//
// Moment mode trades the height variable for a truncated expansion around 1
// (sigma = s - 1, omega = w - 1). Derivative data at the point 1 stays exact
// up to the requested order while coefficient sizes stay linear in n, which
// is what makes moment sequences past the trivariate cap affordable.

#include <string>
#include <vector>

#include "tamarilab/multipoly.hpp"
#include "tamarilab/series.hpp"

namespace tamarilab {

enum class GFTag { F, H, G, M };

struct GFArray {
    GFTag tag = GFTag::F;
    VarTable vars;
    std::vector<MultiPoly> coeff;  // coeff[n] = [t^n]
    int moment_order = -1;         // -1: full polynomials; else sigma/omega truncation

    int order() const { return static_cast<int>(coeff.size()) - 1; }
    const MultiPoly& at(int n) const;
    bool operator==(const GFArray&) const = default;
};

// Memory guards, not speed promises: full trivariate coefficients grow like
// n^3 terms per order, everything else like n^2 or less.
inline constexpr int kGFBivariateCap = 200;
inline constexpr int kGFTrivariateCap = 40;

GFArray iterate_F(int n_max);
GFArray iterate_H(int n_max, int moment_order = -1);
GFArray iterate_G(int n_max, int moment_order = -1);
GFArray iterate_M(int n_max, int moment_order = -1);

// Extends an array to a higher order. Only the light auxiliary data (F and
// its divided differences) is recomputed; the array's own coefficients are
// reused, so resuming from a snapshot costs what the missing orders cost.
GFArray gf_extend(GFArray array, int n_max);

// Per-n value of (d/d var)^k [t^n] at var = 1, every other variable also at
// 1; var is "s" for H, "w" for G and M. Full arrays return exact zeros where
// the polynomial degree falls short of k; moment-mode arrays hold derivative
// orders up to moment_order only and refuse beyond that.
RatSeries factorial_moment_series(const GFArray& array, const std::string& var, int k);

// CSV rows n,k,numerator,denominator for k = 0..k_max.
std::string factorial_moment_csv(const GFArray& array, const std::string& var, int k_max);

// JSON snapshot with exact coefficient strings; parsing inverts it.
std::string gf_snapshot_json(const GFArray& array);
GFArray gf_from_snapshot_json(const std::string& text);

}  // namespace tamarilab
