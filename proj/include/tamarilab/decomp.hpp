#pragma once

// The recursive bijection on Tamari intervals: a nonempty interval splits at
// the first returns of its two paths into a marked interval and a plain one,
// and composing is the exact inverse. The same convolution drives the exact
// count table I[n][k] (intervals of size n whose lower path has k contacts),
// which in turn powers the uniform samplers.

#include <string>
#include <vector>

#include "tamarilab/dyck.hpp"
#include "tamarilab/rational.hpp"

namespace tamarilab {

struct MarkedInterval {
    TamariInterval interval;
    int mark;  // ordinal of the marked contact of the lower path, 1..contacts

    bool operator==(const MarkedInterval&) const = default;
};

struct DecompStep {
    MarkedInterval first;
    TamariInterval second;

    bool operator==(const DecompStep&) const = default;
};

// Splits a nonempty interval. The upper path splits at its first return u
// Q1 d Q2; the lower path lends its first return to the mark: P = u P1' d
// P1'' P2 and the first component's lower path is P1' P1'' with the junction
// contact marked. Inverse of compose.
DecompStep decompose(const TamariInterval& iv);

// Rebuilds the interval of size first.size + second.size + 1; inverse of
// decompose. Throws if the mark is out of range.
TamariInterval compose(const DecompStep& ds);

// Exact interval counts refined by the number of lower-path contacts,
// I[n][k], and their suffix sums S[n][j] = sum_{k >= j} I[n][k]. Row n+1 is
// the convolution sum_{a+b=n} S[a] * I[b]: S plays the divided difference
// (choosing the mark), I the unmarked factor.
class CountTable {
public:
    static CountTable build(int n_max);

    int n_max() const { return static_cast<int>(rows_.size()) - 1; }
    // I[n][k]; zero outside 1..n+1.
    const BigInt& count(int n, int k) const;
    // S[n][j]; zero outside 1..n+1.
    const BigInt& suffix(int n, int j) const;
    const std::vector<BigInt>& row(int n) const;
    BigInt row_sum(int n) const;     // = interval_count_formula(n)
    BigInt marked_sum(int n) const;  // sum_k k * I[n][k]

    // "n,k,count" lines for all nonzero entries, ascending.
    std::string to_csv() const;

private:
    std::vector<std::vector<BigInt>> rows_;    // rows_[n][k], k = 0..n+1
    std::vector<std::vector<BigInt>> suffix_;  // same shape
    static const BigInt kZero;
};

}  // namespace tamarilab
