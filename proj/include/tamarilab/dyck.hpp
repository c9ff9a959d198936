#pragma once

// Dyck paths and the Tamari covering relation, plus a brute-force closure of
// that relation for small sizes. The closure is the ground-truth oracle: it
// only encodes the covering rule (swap a down-step with the shortest
// excursion that follows it), and everything order-theoretic is derived from
// it by explicit search.

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "tamarilab/rational.hpp"
#include "tamarilab/rng.hpp"

namespace tamarilab {

class DyckPath {
public:
    DyckPath() = default;  // the empty path (size 0)
    explicit DyckPath(std::vector<bool> ups);
    static DyckPath parse(std::string_view s);  // over {U, D} (case-insensitive)

    int size() const { return static_cast<int>(ups_.size()) / 2; }
    int length() const { return static_cast<int>(ups_.size()); }
    bool up(int i) const { return ups_[static_cast<std::size_t>(i)]; }

    // Height of the lattice point before step i; i ranges over 0..2n.
    int height_at(int i) const;
    // All 2n+1 heights in one pass.
    std::vector<int> heights() const;
    // Height at the start of the j-th up-step (j in 1..n); the tilde statistic.
    int upstep_height(int j) const;
    // Start abscissa of the j-th up-step.
    int upstep_start(int j) const;
    // Start abscissa of the down-step matching the up-step that begins at
    // abscissa i (the first later return to that height).
    int matching_down_start(int i) const;
    // Number of lattice points at height zero (start included); size n paths
    // have between 2 and n+1 of them, the empty path exactly 1.
    int contacts() const;

    std::string str() const;

    bool operator==(const DyckPath&) const = default;
    std::strong_ordering operator<=>(const DyckPath&) const = default;

private:
    std::vector<bool> ups_;
};

std::vector<DyckPath> all_dyck_paths(int n);

// Q dominates P at every abscissa. Necessary for Tamari P <= Q, not
// sufficient; used as a cheap sanity filter, never as the order itself.
bool pointwise_leq(const DyckPath& p, const DyckPath& q);

// One Tamari covering move per down-step that is immediately followed by an
// up-step: the down-step and the shortest excursion after it swap places.
std::vector<DyckPath> covering_successors(const DyckPath& p);

struct TamariInterval {
    DyckPath lower, upper;

    int size() const { return lower.size(); }
    std::string str() const { return lower.str() + "\n" + upper.str(); }
    bool operator==(const TamariInterval&) const = default;
    std::strong_ordering operator<=>(const TamariInterval&) const = default;
};

// Closed-form interval count: 2/(n(n+1)) * C(4n+1, n-1), with the empty case
// counting 1. The division is verified exact.
BigInt interval_count_formula(int n);

// Catalan number C(2n, n)/(n+1).
BigInt catalan(int n);

// Transitive closure of the covering relation over all paths of one size.
// Construction asserts that every covering move strictly raises the sum of
// heights (so the digraph is acyclic and the closure a partial order).
class TamariClosure {
public:
    explicit TamariClosure(int n, int cap = 10);

    int n() const { return n_; }
    const std::vector<DyckPath>& paths() const { return paths_; }
    int id(const DyckPath& p) const;  // throws if foreign
    const std::vector<int>& successors(int id) const { return succ_[static_cast<std::size_t>(id)]; }
    const std::vector<int>& upset(int id) const { return upset_[static_cast<std::size_t>(id)]; }

    bool leq(const DyckPath& p, const DyckPath& q) const;
    BigInt num_intervals() const;
    std::vector<TamariInterval> intervals() const;

private:
    int n_;
    std::vector<DyckPath> paths_;           // sorted; index = id
    std::vector<std::vector<int>> succ_;    // covering edges
    std::vector<std::vector<int>> upset_;   // sorted reachable sets (reflexive)
};

// One draw of the abscissa coupling: J uniform on 1..n, I the start of the
// J-th up-step or of its matching down-step, equiprobably. I is then uniform
// on 0..2n-1 and |height_at(I) - upstep_height(J)| <= 1 by construction.
struct CoupleDraw {
    int abscissa;  // I
    int upstep;    // J
};
CoupleDraw couple_abscissa(const DyckPath& p, Rng& rng);

// Uniform Dyck path of size n by the cycle lemma: shuffle n up-steps among
// n+1 down-steps, rotate to the unique cyclic shift that is a Dyck path
// followed by one down-step, and drop that final step. Each path has exactly
// 2n+1 preimages, so the shuffle's uniformity carries over.
DyckPath random_dyck_path(int n, Rng& rng);

}  // namespace tamarilab
