#pragma once

// Command pipelines behind the tamarilab binary. Each cmd_* function runs
// one subcommand end to end: compute, write the primary output file, write a
// run manifest next to it, print a one-line summary, and return the process
// exit code (0 success, 1 a verification or statistical check failed, 2 is
// reserved for usage errors, reported by throwing std::invalid_argument).
//
// Exact-mode outputs are deterministic functions of the parameters and the
// seed, so re-running a manifest reproduces the output files byte for byte.
// Every CSV starts with a "# columns:" comment defining each statistic, then
// the header row; exact rationals are printed as num/den strings alongside
// float columns.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tamarilab {

inline constexpr const char* kArtifactVersion = "tamarilab-0.1.0";

// What it takes to reproduce a run: the subcommand, every parameter in CLI
// order, the seed when one was used, and FNV-1a digests of the files read
// and written. Wall-clock is informational and excluded from comparisons.
struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> params;
    bool has_seed = false;
    std::uint64_t seed = 0;
    std::string artifact_version = kArtifactVersion;
    std::vector<std::pair<std::string, std::string>> inputs;   // path, digest
    std::vector<std::pair<std::string, std::string>> outputs;  // path, digest
    double wall_ms = 0.0;
};

std::string manifest_json(const RunManifest& m);

// FNV-1a 64 over the file bytes, as "fnv1a64:" + 16 hex digits. A cheap
// consistency stamp for manifests, not a cryptographic digest.
std::string file_digest(const std::string& path);

struct CountsOpts {
    int n_max = 10;
    std::string out = "counts.csv";
};

struct VerifyOpts {
    std::vector<std::string> checks;  // F, H, G, M, kernels, census, all
    int order = 0;                    // 0 = per-check default
    std::string out = "verify.json";
};

struct SampleOpts {
    int n = 5;
    long count = 100;
    std::uint64_t seed = 0;
    std::string mode = "exact";      // exact | log-float
    std::string stats = "summary";   // summary | marked | profile | uniformity
    bool dump_paths = false;         // summary only: add the UD strings
    std::string out = "samples.csv";
};

struct MomentsOpts {
    std::string instance = "upper";  // dyck | upper | lower
    int k_max = 4;
    int n_max = 40;
    std::string out = "moments.csv";
};

struct MixedOpts {
    int n_max = 60;
    std::string out = "mixed.csv";
};

struct PumpOpts {
    std::string instance;   // dyck | dyck-beta-3/4 | upper | lower, or empty
    std::string spec_json;  // path to a PumpSpec JSON file, or empty
    int k_max = 12;
    std::string out = "pump.csv";
};

// Contact-count table rows (n, k, count) with per-row row_sum and formula
// columns; exits 1 if any row sum disagrees with the closed formula.
int cmd_counts(const CountsOpts& o);

// Runs the selected closed-form verifications plus (under "census") the
// brute-force census comparison of the G, H, M iterations for n <= 8.
// Writes a JSON array of check reports; exits 1 if any check fails.
int cmd_verify(const VerifyOpts& o);

// Draws `count` uniform intervals of size n and reports them per --stats:
//   summary     per-interval statistics, identical rows for identical draws
//   marked      height at a uniform abscissa, up-step heights, the coupling
//   profile     per-abscissa (P, Q, Q/P) arrays, one block per sample
//   uniformity  chi-squared report (JSON) against the enumerated closure
// Exact mode refuses n beyond the table budget and suggests log-float mode.
int cmd_sample(const SampleOpts& o);

// Exact finite-n factorial and raw moments of the marked-abscissa height
// (dyck: plain Dyck paths; upper/lower: that path of a uniform interval),
// against the pumped limit constants and the transfer predictions.
int cmd_moments(const MomentsOpts& o);

// Exact E[(Qtilde - 3 Ptilde)^2] per n from the M iteration, plus its ratio
// to n (bounded in n; 5/6 at n = 2).
int cmd_mixed(const MixedOpts& o);

// Runs the moment pump on a built-in instance or a PumpSpec JSON file and
// writes the (instance, k, c_k exact, c_k float, limit moment) table.
int cmd_pump(const PumpOpts& o);

}  // namespace tamarilab
