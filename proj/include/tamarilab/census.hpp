#pragma once

// Brute-force censuses over the Tamari closure: enumerate every interval
// (and marked abscissa or up-step) directly and tally the statistics as
// polynomials. Nothing here touches the functional-equation iteration in
// gf.hpp, so agreement between the two is a genuine cross-check rather than
// a tautology. Cost scales with the interval count (118668 at n = 8), so
// keep n small.

#include <vector>

#include "tamarilab/dyck.hpp"
#include "tamarilab/gf.hpp"

namespace tamarilab {

// Abscissas of the vertices at height zero, in increasing order.
std::vector<int> contact_positions(const DyckPath& p);

// x^(lower contacts) s^(upper height at i), over all intervals of size n and
// all abscissas 0 <= i <= 2n. Ground truth for [t^n]H.
MultiPoly census_H(int n, const VarTable& vt);

// x^(contacts strictly before i) y^(contacts weakly after i) w^(lower height
// at i), same range of marked abscissas. Ground truth for [t^n]G.
MultiPoly census_G(int n, const VarTable& vt);

// Over up-step indices j = 1..n of the lower path: x^(contacts weakly before
// the j-th up-step's start) y^(contacts strictly after), and w to the power
// (upper up-step height) - 3 (lower up-step height). Ground truth for
// [t^n]M.
MultiPoly census_M(int n, const VarTable& vt);

// Substitutes 1 for every variable: the total weight of a census.
BigRat eval_all_ones(const MultiPoly& p);

}  // namespace tamarilab
