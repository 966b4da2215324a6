// Command-line driver: (E, s) diagnostic sweeps, threshold tables, oracle
// cross-checks and config inspection. See README.md for the config schema.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "saddle_squeeze/config.hpp"
#include "saddle_squeeze/oracle_suite.hpp"
#include "saddle_squeeze/sweep.hpp"

namespace fs = std::filesystem;
using namespace saddle_squeeze;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitOracleFailure = 2;
constexpr int kExitInternalError = 3;

struct CommonOptions {
    std::string config_path;
    double tol = -1.0;
    std::int64_t seed = -1;
};

RunConfig resolve_config(const CommonOptions& opts) {
    RunConfig cfg = opts.config_path.empty() ? RunConfig::defaults()
                                             : load_config_file(opts.config_path);
    if (opts.tol >= 0.0) cfg.tol = opts.tol;
    if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);
    cfg.validate();
    return cfg;
}

fs::path resolve_output(const std::string& out_dir, const std::string& path) {
    const fs::path p(path);
    if (p.is_absolute() || out_dir.empty()) return p;
    return fs::path(out_dir) / p;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& emit) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path.string());
    emit(os);
}

int cmd_sweep(const CommonOptions& opts, const std::string& out_dir, const std::string& format,
              bool log_prob) {
    RunConfig cfg = resolve_config(opts);
    const std::vector<SweepRecord> records = run_sweep(cfg);

    std::vector<OutputSpec> outputs = cfg.outputs;
    if (outputs.empty())
        outputs.push_back({"table", format, format == "structured" ? "sweep.json" : "sweep.csv"});

    for (const OutputSpec& out : outputs) {
        const fs::path path = resolve_output(out_dir, out.path);
        if (out.format == "curve") {
            write_file(path, [&](std::ostream& os) { write_curve(os, records, out.diagnostic); });
        } else if (out.format == "structured") {
            write_file(path, [&](std::ostream& os) { write_structured(os, records); });
        } else {
            write_file(path, [&](std::ostream& os) { write_csv(os, records, log_prob); });
        }
        std::cout << "wrote " << records.size() << " records (" << out.format << ") to "
                  << path.string() << '\n';
    }
    return kExitOk;
}

int cmd_oracle(const CommonOptions& opts) {
    const RunConfig cfg = resolve_config(opts);
    const OracleReport report = run_oracle_suite(cfg);
    write_report(std::cout, report);
    if (!report.all_pass()) {
        std::cerr << report_failures_json(report);
        return kExitOracleFailure;
    }
    return kExitOk;
}

int cmd_thresholds(const CommonOptions& opts) {
    const RunConfig cfg = resolve_config(opts);
    std::cout << "E,c_cand,s_geom,s_dep,status\n";
    for (double e : cfg.e_axis.values) {
        const SweepRecord rec =
            evaluate_point(cfg.model, e, 0.0, cfg.tol, cfg.threshold_s_max);
        std::cout << format_double(e) << ',' << format_double(rec.c_cand) << ','
                  << format_double(rec.s_geom) << ',' << format_double(rec.s_dep) << ','
                  << status_string(rec.status) << '\n';
    }
    return kExitOk;
}

int cmd_show_config(const CommonOptions& opts) {
    std::cout << dump_config(resolve_config(opts));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"squeezed-state transmission diagnostics for normal-form bottlenecks"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string out_dir;
    std::string format = "csv";
    bool log_prob = false;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opts.config_path, "run configuration file (JSON)");
        sub->add_option("--tol", opts.tol, "override level-sum truncation tolerance");
        sub->add_option("--seed", opts.seed, "override oracle RNG seed");
    };

    CLI::App* sweep = app.add_subcommand("sweep", "evaluate the diagnostic bundle on the (E, s) grid");
    add_common(sweep);
    sweep->add_option("--out", out_dir, "directory for output files");
    sweep->add_option("--format", format, "default table format: csv or structured")
        ->check(CLI::IsMember({"csv", "structured"}));
    sweep->add_flag("--log-prob", log_prob, "append log10 transmission columns to CSV tables");

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "run the oracle cross-check suite");
    add_common(oracle_cmd);

    CLI::App* thresholds = app.add_subcommand("thresholds", "print c_cand, s_geom, s_dep per energy");
    add_common(thresholds);

    CLI::App* show = app.add_subcommand("show-config", "echo the parsed, normalized configuration");
    add_common(show);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (sweep->parsed()) return cmd_sweep(opts, out_dir, format, log_prob);
        if (oracle_cmd->parsed()) return cmd_oracle(opts);
        if (thresholds->parsed()) return cmd_thresholds(opts);
        if (show->parsed()) return cmd_show_config(opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInternalError;
    }
    return kExitConfigError;
}
