// Command-line front end. Flag parsing only; the actual pipelines live in
// the library (cli.cpp) so tests can drive them directly. Exit codes: 0 on
// success, 1 when a verification or statistical check fails, 2 on usage
// errors (bad flags, unknown names, refused parameter ranges).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tamarilab/cli.hpp"

namespace {

// Config files are JSON objects with one section per subcommand, e.g.
//   {"sample": {"n": 5, "count": 100, "seed": 7}}
// Scalars at top level apply to the main app. Values become flag inputs.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(input);
        } catch (const nlohmann::json::exception& e) {
            throw CLI::FileError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!j.is_object()) throw CLI::FileError("config must be a JSON object");
        std::vector<CLI::ConfigItem> out;
        for (const auto& [key, val] : j.items()) {
            if (val.is_object()) {
                for (const auto& [name, v] : val.items()) {
                    CLI::ConfigItem item;
                    item.parents = {key};
                    item.name = name;
                    item.inputs = scalars(v);
                    out.push_back(std::move(item));
                }
            } else {
                CLI::ConfigItem item;
                item.name = key;
                item.inputs = scalars(val);
                out.push_back(std::move(item));
            }
        }
        return out;
    }

private:
    static std::vector<std::string> scalars(const nlohmann::json& v) {
        std::vector<std::string> r;
        if (v.is_array())
            for (const auto& e : v) r.push_back(one(e));
        else
            r.push_back(one(v));
        return r;
    }
    static std::string one(const nlohmann::json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        return v.dump();
    }
};

}  // namespace

int main(int argc, char** argv) {
    using namespace tamarilab;

    CLI::App app{"Exact and Monte Carlo statistics of random Tamari lattice intervals"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config file with one section per subcommand");
    app.set_version_flag("--version", kArtifactVersion);

    CountsOpts co;
    auto* counts = app.add_subcommand("counts", "contact-count table, row sums checked against "
                                                "the closed interval-count formula");
    counts->fallthrough();  // let --config after the subcommand reach the main app
    counts->add_option("--n-max", co.n_max, "largest interval size")->capture_default_str();
    counts->add_option("--out", co.out, "output CSV")->capture_default_str();

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "closed-form parametrizations, kernel roots and "
                                                "brute-force census comparisons");
    verify->fallthrough();  // let --config after the subcommand reach the main app
    verify->add_option("--checks", vo.checks, "comma list of F, H, G, M, kernels, census, all")
        ->delimiter(',')
        ->required();
    verify->add_option("--order", vo.order, "override the per-check default order");
    verify->add_option("--out", vo.out, "output JSON report")->capture_default_str();

    SampleOpts so;
    auto* sample = app.add_subcommand("sample", "uniform random intervals, exact or log-float");
    sample->fallthrough();  // let --config after the subcommand reach the main app
    sample->add_option("--n", so.n, "interval size")->required();
    sample->add_option("--count", so.count, "number of draws")->capture_default_str();
    sample->add_option("--seed", so.seed, "RNG seed (required: no silent entropy)")->required();
    sample->add_option("--mode", so.mode, "exact | log-float")->capture_default_str();
    sample->add_option("--stats", so.stats, "summary | marked | profile | uniformity")
        ->capture_default_str();
    sample->add_flag("--dump-paths", so.dump_paths, "add U/D path strings to summary rows");
    sample->add_option("--out", so.out, "output CSV (JSON for uniformity)")->capture_default_str();

    MomentsOpts mo;
    auto* moments = app.add_subcommand("moments", "exact finite-n height moments vs pumped "
                                                  "limits and transfer predictions");
    moments->fallthrough();  // let --config after the subcommand reach the main app
    moments->add_option("--instance", mo.instance, "dyck | upper | lower")->capture_default_str();
    moments->add_option("--k-max", mo.k_max, "largest moment order")->capture_default_str();
    moments->add_option("--n-max", mo.n_max, "largest size")->capture_default_str();
    moments->add_option("--out", mo.out, "output CSV")->capture_default_str();

    MixedOpts xo;
    auto* mixed = app.add_subcommand("mixed", "exact E[(Qtilde - 3 Ptilde)^2] per n and its "
                                              "ratio to n");
    mixed->fallthrough();  // let --config after the subcommand reach the main app
    mixed->add_option("--n-max", xo.n_max, "largest size")->capture_default_str();
    mixed->add_option("--out", xo.out, "output CSV")->capture_default_str();

    PumpOpts po;
    auto* pump = app.add_subcommand("pump", "singularity coefficients c_k and limit moments of "
                                            "a recurrence instance");
    pump->fallthrough();  // let --config after the subcommand reach the main app
    pump->add_option("--instance", po.instance, "dyck | dyck-beta-3/4 | upper | lower");
    pump->add_option("--spec-json", po.spec_json, "JSON file with a custom instance");
    pump->add_option("--k-max", po.k_max, "largest moment order")->capture_default_str();
    pump->add_option("--out", po.out, "output CSV")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help / --version
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*counts) return cmd_counts(co);
        if (*verify) return cmd_verify(vo);
        if (*sample) return cmd_sample(so);
        if (*moments) return cmd_moments(mo);
        if (*mixed) return cmd_mixed(xo);
        if (*pump) return cmd_pump(po);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;  // unreachable with require_subcommand(1)
}
