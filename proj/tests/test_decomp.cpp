// Interval decomposition, contact-counting tables, and the two uniform
// samplers. The brute-force Tamari closure is the oracle throughout: the
// bijection is checked by exhaustive round trips, the tables by a census of
// the closure, and the samplers by chi-square tests over full enumerations.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>
#include <unordered_map>

#include "tamarilab/decomp.hpp"
#include "tamarilab/dyck.hpp"
#include "tamarilab/sampler.hpp"
#include "tamarilab/stats.hpp"

using namespace tamarilab;

namespace {

double log2_big(const BigInt& z) {
    long e = 0;
    const double d = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log2(d) + static_cast<double>(e);
}

}  // namespace

TEST_CASE("decompose on small intervals") {
    // Size 1: everything shrinks to empty parts with the mark forced to 1.
    TamariInterval unit{DyckPath::parse("UD"), DyckPath::parse("UD")};
    DecompStep ds = decompose(unit);
    CHECK(ds.first.interval.lower == DyckPath());
    CHECK(ds.first.interval.upper == DyckPath());
    CHECK(ds.first.mark == 1);
    CHECK(ds.second.lower == DyckPath());
    CHECK(compose(ds) == unit);

    // A size 3 interval worked out by hand. Upper UUDUDD returns first at 6,
    // so its shell is everything; lower UDUDUD returns at 2, leaving
    // P1 = empty + UDUD and an empty second part.
    TamariInterval iv{DyckPath::parse("UDUDUD"), DyckPath::parse("UUDUDD")};
    ds = decompose(iv);
    CHECK(ds.first.interval.lower == DyckPath::parse("UDUD"));
    CHECK(ds.first.interval.upper == DyckPath::parse("UDUD"));
    CHECK(ds.first.mark == 1);  // the junction contact is the start point
    CHECK(ds.second == TamariInterval{});
    CHECK(compose(ds) == iv);

    CHECK_THROWS_AS(decompose(TamariInterval{}), std::invalid_argument);
    // Not Tamari-comparable: lower returns later than upper.
    CHECK_THROWS_AS(decompose(TamariInterval{DyckPath::parse("UUDD"), DyckPath::parse("UDUD")}),
                    std::invalid_argument);
    // Mark outside the admissible range.
    CHECK_THROWS_AS(compose(DecompStep{{unit, 3}, TamariInterval{}}), std::invalid_argument);
    CHECK_THROWS_AS(compose(DecompStep{{unit, 0}, TamariInterval{}}), std::invalid_argument);
}

TEST_CASE("decompose and compose are mutually inverse") {
    std::vector<TamariClosure> closures;
    for (int n = 0; n <= 7; ++n) closures.emplace_back(n);

    for (int n = 1; n <= 7; ++n) {
        for (const TamariInterval& iv : closures[static_cast<std::size_t>(n)].intervals()) {
            DecompStep ds = decompose(iv);
            CHECK(compose(ds) == iv);

            // Components are genuine Tamari intervals of complementary sizes.
            const TamariInterval& f = ds.first.interval;
            const TamariInterval& s = ds.second;
            CHECK(f.size() + s.size() == n - 1);
            CHECK(closures[static_cast<std::size_t>(f.size())].leq(f.lower, f.upper));
            CHECK(closures[static_cast<std::size_t>(s.size())].leq(s.lower, s.upper));
            CHECK(ds.first.mark >= 1);
            CHECK(ds.first.mark <= f.lower.contacts());

            // Contact bookkeeping: the composed lower path keeps the marked
            // part's contacts at or after the mark, plus the second part's.
            CHECK(iv.lower.contacts() ==
                  f.lower.contacts() - ds.first.mark + 1 + s.lower.contacts());
        }
    }
}

TEST_CASE("composition is a bijection from marked pairs") {
    std::vector<TamariClosure> closures;
    for (int n = 0; n <= 5; ++n) closures.emplace_back(n);

    for (int s = 1; s <= 6; ++s) {
        std::set<std::string> seen;
        BigInt produced = 0;
        for (int a = 0; a <= s - 1; ++a) {
            const int b = s - 1 - a;
            for (const TamariInterval& f : closures[static_cast<std::size_t>(a)].intervals()) {
                for (int m = 1; m <= f.lower.contacts(); ++m) {
                    for (const TamariInterval& sec : closures[static_cast<std::size_t>(b)].intervals()) {
                        DecompStep ds{{f, m}, sec};
                        TamariInterval iv = compose(ds);
                        ++produced;
                        CHECK(iv.size() == s);
                        seen.insert(iv.str());
                        CHECK(decompose(iv) == ds);
                    }
                }
            }
        }
        // Injective and onto: distinct outputs, as many as there are intervals.
        CHECK(produced == interval_count_formula(s));
        CHECK(BigInt(static_cast<unsigned long>(seen.size())) == interval_count_formula(s));
        if (s <= 5) {
            for (const TamariInterval& iv : closures[static_cast<std::size_t>(s)].intervals())
                CHECK(seen.count(iv.str()) == 1);
        }
    }
}

TEST_CASE("count table matches a census of the closure") {
    CountTable table = CountTable::build(10);
    CHECK(table.n_max() == 10);

    // Hand-checkable rows.
    CHECK(table.count(0, 1) == 1);
    CHECK(table.count(1, 2) == 1);
    CHECK(table.count(1, 1) == 0);
    CHECK(table.count(2, 2) == 1);
    CHECK(table.count(2, 3) == 2);

    for (int n = 0; n <= 8; ++n) {
        TamariClosure closure(n);
        std::map<int, BigInt> census;
        for (const TamariInterval& iv : closure.intervals()) census[iv.lower.contacts()] += 1;
        for (int k = 0; k <= n + 1; ++k) {
            const BigInt expect = census.count(k) ? census[k] : BigInt(0);
            CHECK(table.count(n, k) == expect);
        }
    }

    // Row sums against the closed-form interval count.
    for (int n = 0; n <= 10; ++n) CHECK(table.row_sum(n) == interval_count_formula(n));

    // Suffix sums are what they claim to be.
    for (int n = 0; n <= 10; ++n) {
        CHECK(table.suffix(n, 1) == table.row_sum(n));
        for (int j = 1; j <= n + 1; ++j) {
            BigInt direct = 0;
            for (int k = j; k <= n + 1; ++k) direct += table.count(n, k);
            CHECK(table.suffix(n, j) == direct);
        }
    }

    // The counting identity behind the unconditioned sampler: a size n+1
    // interval is a marked interval times a plain one.
    for (int n = 0; n <= 9; ++n) {
        BigInt rhs = 0;
        for (int a = 0; a <= n; ++a) rhs += table.marked_sum(a) * table.row_sum(n - a);
        CHECK(table.row_sum(n + 1) == rhs);
    }

    CHECK_THROWS_AS(table.count(11, 1), std::out_of_range);
    CHECK_THROWS_AS(table.suffix(-1, 1), std::out_of_range);
    CHECK(table.count(5, 0) == 0);
    CHECK(table.count(5, 9) == 0);
}

TEST_CASE("intervals with two upper contacts follow the suffix law") {
    // When the upper path touches zero only at its ends, the decomposition
    // has an empty second part, and the lower contact distribution collapses
    // to suffix sums of the previous row: census(k) = S[n-1][k-1].
    CountTable table = CountTable::build(8);
    for (int n = 1; n <= 8; ++n) {
        TamariClosure closure(n);
        std::map<int, BigInt> census;
        for (const TamariInterval& iv : closure.intervals())
            if (iv.upper.contacts() == 2) census[iv.lower.contacts()] += 1;
        for (int k = 2; k <= n + 1; ++k) {
            const BigInt expect = census.count(k) ? census[k] : BigInt(0);
            CHECK(expect == table.suffix(n - 1, k - 1));
        }
        CHECK(census.count(0) == 0);
        CHECK(census.count(1) == 0);
    }
}

TEST_CASE("count table CSV") {
    CountTable table = CountTable::build(3);
    const std::string csv = table.to_csv();
    CHECK(csv.find("n,k,count") == 0);
    CHECK(csv.find("0,1,1\n") != std::string::npos);
    CHECK(csv.find("2,3,2\n") != std::string::npos);
    CHECK(csv.find("1,1,0") == std::string::npos);  // zero entries stay out
    // One line per nonzero entry plus the header.
    std::size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    std::size_t nonzero = 0;
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= n + 1; ++k)
            if (table.count(n, k) != 0) ++nonzero;
    CHECK(lines == nonzero + 1);
}

TEST_CASE("uniform_below_big stays in range and covers it") {
    Rng rng(20240815);
    CHECK_THROWS_AS(uniform_below_big(rng, BigInt(0)), std::invalid_argument);
    CHECK_THROWS_AS(uniform_below_big(rng, BigInt(-4)), std::invalid_argument);
    CHECK(uniform_below_big(rng, BigInt(1)) == 0);

    std::set<long> hit;
    for (int t = 0; t < 500; ++t) {
        BigInt x = uniform_below_big(rng, BigInt(7));
        CHECK(x >= 0);
        CHECK(x < 7);
        hit.insert(x.get_si());
    }
    CHECK(hit.size() == 7);

    // A bound straddling word boundaries.
    const BigInt big = pow_int(BigInt(2), 100) + 12345;
    for (int t = 0; t < 50; ++t) {
        BigInt x = uniform_below_big(rng, big);
        CHECK(x >= 0);
        CHECK(x < big);
    }
}

TEST_CASE("exact sampler draws valid intervals uniformly") {
    CountTable table = CountTable::build(8);
    ExactSampler sampler(table);
    CHECK(sampler.n_max() == 8);

    Rng rng(987654321);
    CHECK(sampler.sample(0, rng) == TamariInterval{});
    CHECK(sampler.sample(1, rng) == TamariInterval{DyckPath::parse("UD"), DyckPath::parse("UD")});
    CHECK_THROWS_AS(sampler.sample(9, rng), std::out_of_range);

    // Validity at a size with a rich lattice.
    TamariClosure closure6(6);
    for (int t = 0; t < 500; ++t) {
        TamariInterval iv = sampler.sample(6, rng);
        REQUIRE(iv.size() == 6);
        CHECK(closure6.leq(iv.lower, iv.upper));
    }

    // Uniformity over the full enumeration at n = 5 (399 intervals).
    TamariClosure closure5(5);
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::uint64_t> counts;
    for (const TamariInterval& iv : closure5.intervals()) {
        index[iv.str()] = counts.size();
        counts.push_back(0);
    }
    REQUIRE(counts.size() == 399);
    const int per_cell = 200;
    for (int t = 0; t < per_cell * 399; ++t) {
        TamariInterval iv = sampler.sample(5, rng);
        auto it = index.find(iv.str());
        REQUIRE(it != index.end());
        ++counts[it->second];
    }
    const double p = chi2_equal_cells(counts);
    CHECK(p > 1e-3);

    // Same seed, same stream.
    Rng r1(77), r2(77);
    for (int t = 0; t < 20; ++t) CHECK(sampler.sample(7, r1) == sampler.sample(7, r2));
}

TEST_CASE("float table agrees with the exact one where no truncation occurs") {
    CountTable exact = CountTable::build(60);
    FloatSampler fs = FloatSampler::build(60);
    CHECK(fs.n_max() == 60);
    for (int n = 0; n <= 60; ++n) {
        for (int k = 1; k <= n + 1; ++k) {
            const BigInt& c = exact.count(n, k);
            const double lg = fs.log2_count(n, k);
            if (c == 0) {
                CHECK(lg == -std::numeric_limits<double>::infinity());
            } else {
                CHECK(std::abs(lg - log2_big(c)) < 1e-9);
            }
        }
    }
    CHECK_THROWS_AS(fs.log2_count(61, 1), std::out_of_range);
}

TEST_CASE("float sampler draws valid intervals uniformly") {
    FloatSampler fs = FloatSampler::build(6);
    Rng rng(13579);

    TamariClosure closure4(4);
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::uint64_t> counts;
    for (const TamariInterval& iv : closure4.intervals()) {
        index[iv.str()] = counts.size();
        counts.push_back(0);
    }
    REQUIRE(counts.size() == 68);
    const int per_cell = 300;
    for (int t = 0; t < per_cell * 68; ++t) {
        TamariInterval iv = fs.sample(4, rng);
        auto it = index.find(iv.str());
        REQUIRE(it != index.end());
        ++counts[it->second];
    }
    CHECK(chi2_equal_cells(counts) > 1e-3);

    TamariClosure closure6(6);
    for (int t = 0; t < 300; ++t) {
        TamariInterval iv = fs.sample(6, rng);
        REQUIRE(iv.size() == 6);
        CHECK(closure6.leq(iv.lower, iv.upper));
    }

    Rng r1(4242), r2(4242);
    for (int t = 0; t < 20; ++t) CHECK(fs.sample(6, r1) == fs.sample(6, r2));
}

TEST_CASE("float table disk cache") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "tamarilab_cache_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    FloatSampler built = FloatSampler::build(20);
    const std::string file = (dir / "table.bin").string();
    built.save(file);
    FloatSampler loaded = FloatSampler::load(file);
    REQUIRE(loaded.n_max() == 20);
    for (int n = 0; n <= 20; ++n)
        for (int k = 1; k <= n + 1; ++k) CHECK(loaded.log2_count(n, k) == built.log2_count(n, k));

    // Loaded tables sample identically to freshly built ones.
    Rng r1(5150), r2(5150);
    for (int t = 0; t < 10; ++t) CHECK(loaded.sample(20, r1) == built.sample(20, r2));

    CHECK_THROWS_AS(FloatSampler::load((dir / "missing.bin").string()), std::runtime_error);

    // build_or_load honors the cache directory: first call writes the file,
    // the second round trips through it.
    setenv("TAMARILAB_CACHE_DIR", dir.string().c_str(), 1);
    REQUIRE(cache_dir_from_env().has_value());
    FloatSampler first = FloatSampler::build_or_load(15);
    const fs::path cached = dir / "tamari_float_counts_n15_w128.bin";
    CHECK(fs::exists(cached));
    FloatSampler second = FloatSampler::build_or_load(15);
    for (int n = 0; n <= 15; ++n)
        for (int k = 1; k <= n + 1; ++k) CHECK(first.log2_count(n, k) == second.log2_count(n, k));
    unsetenv("TAMARILAB_CACHE_DIR");
    CHECK(!cache_dir_from_env().has_value());

    fs::remove_all(dir);
}
