#pragma once

// Uniform random Tamari intervals through the recursive bijection. Exact mode
// walks big-integer count tables, so every interval of size n has probability
// exactly 1/|I_n|. Float mode keeps per-size rows scaled by a power of two
// and truncated past contact count kWidth; the neglected mass decays like
// (3/4)^k, far below double rounding, but the mode is honestly "uniform up to
// floating point" and is there for sizes where exact tables are infeasible.

#include <optional>
#include <string>
#include <vector>

#include "tamarilab/decomp.hpp"
#include "tamarilab/rng.hpp"

namespace tamarilab {

// Uniform big integer in [0, bound); rejection on the top 64-bit words.
BigInt uniform_below_big(Rng& rng, const BigInt& bound);

class ExactSampler {
public:
    explicit ExactSampler(const CountTable& counts);

    int n_max() const { return counts_.n_max(); }
    TamariInterval sample(int n, Rng& rng) const;

private:
    const CountTable& counts_;
    std::vector<BigInt> totals_;  // row sums
    std::vector<BigInt> marked_;  // sum_k k I[n][k]
};

class FloatSampler {
public:
    static constexpr int kWidth = 128;  // stored contact range per row

    static FloatSampler build(int n_max);
    // Looks for a cached table in TAMARILAB_CACHE_DIR (if set), else builds
    // and caches there. Without the env var it just builds.
    static FloatSampler build_or_load(int n_max);
    static FloatSampler load(const std::string& path);
    void save(const std::string& path) const;

    int n_max() const { return static_cast<int>(rows_.size()) - 1; }
    TamariInterval sample(int n, Rng& rng) const;

    // log2 of the stored approximation of I[n][k]; -inf when truncated away.
    double log2_count(int n, int k) const;

private:
    struct Row {
        std::vector<double> i;  // scaled counts, index k
        std::vector<double> s;  // scaled suffix sums, same scale
        double marked = 0.0;    // sum_k k * i[k]
        long e2 = 0;            // true value = stored * 2^e2
    };
    std::vector<Row> rows_;

    void finish_row(Row& row) const;
};

std::optional<std::string> cache_dir_from_env();

}  // namespace tamarilab
