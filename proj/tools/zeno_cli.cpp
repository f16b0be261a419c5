// Command-line driver: single points, grid sweeps, figure presets and the
// oracle cross-check report.

#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "zeno/sweep.hpp"
#include "zeno/validation.hpp"

namespace {

enum Exit { kOk = 0, kInvalidConfig = 1, kNumerical = 2, kIo = 3 };

int exit_code(const zeno::Error& e) {
    switch (e.kind()) {
        case zeno::ErrorKind::InvalidParameter:
        case zeno::ErrorKind::WrongRegime: return kInvalidConfig;
        case zeno::ErrorKind::InconsistentState:
        case zeno::ErrorKind::Numerical: return kNumerical;
        case zeno::ErrorKind::Io: return kIo;
    }
    return kNumerical;
}

struct Options {
    std::string config_path;
    std::map<std::string, std::string> flags;
    int threads = 0;
    double tau = 0.0;
    double lambda_T = 0.0;
    std::string scenario_name;
};

zeno::ConfigMap merged_config(const Options& opt) {
    zeno::ConfigMap cfg;
    if (!opt.config_path.empty()) cfg = zeno::read_config(opt.config_path);
    for (const auto& [k, v] : opt.flags)
        if (!v.empty()) cfg[k] = v;
    return cfg;
}

void emit(const zeno::SweepTable& table, const zeno::ConfigMap& cfg) {
    const auto fmt_it = cfg.find("format");
    const zeno::ExportFormat fmt = zeno::parse_format(fmt_it == cfg.end() ? "csv" : fmt_it->second);
    const auto out_it = cfg.find("out");
    if (out_it == cfg.end() || out_it->second.empty() || out_it->second == "-") {
        std::cout << (fmt == zeno::ExportFormat::Csv ? zeno::to_csv(table) : zeno::to_json(table));
        std::cout.flush();
        if (!std::cout) throw zeno::Error(zeno::ErrorKind::Io, "write to standard output failed");
        return;
    }
    zeno::export_table(table, out_it->second, fmt);
    std::cerr << "wrote " << table.size() << " rows to " << out_it->second << "\n";
}

int run_validate() {
    bool ok = true;
    for (const auto& r : zeno::run_validation()) {
        const char* tag = r.passed ? "PASS" : (r.gating ? "FAIL" : "NOTE");
        std::cout << tag << "  " << r.name << ": " << r.detail << "\n";
        if (r.gating && !r.passed) ok = false;
    }
    return ok ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two qubits in a lossy cavity under repeated nonselective measurements"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opt.config_path, "flat key=value configuration file");
        for (const char* key : {"R", "r1", "delta1", "delta2", "s", "phi", "tau_grid", "T_grid", "method", "out",
                                "format"})
            cmd->add_option(std::string("--") + key, opt.flags[key], std::string("overrides config key ") + key);
        cmd->add_option("--threads", opt.threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    };

    auto* simulate = app.add_subcommand("simulate", "measured and free rows at a single (tau, lambda T) point");
    add_common(simulate);
    simulate->add_option("--scenario", opt.flags["scenario"], "start from a preset");
    simulate->add_option("--tau", opt.tau, "dimensionless time lambda t")->required()->check(CLI::NonNegativeNumber);
    simulate->add_option("--T", opt.lambda_T, "dimensionless interval lambda T")->required()->check(CLI::PositiveNumber);

    auto* sweep = app.add_subcommand("sweep", "sweep the tau and lambda T grids");
    add_common(sweep);
    sweep->add_option("--scenario", opt.flags["scenario"], "start from a preset");

    auto* scenario = app.add_subcommand("scenario", "run a figure preset (fig1a, fig1b, fig2, fig3, fig4)");
    add_common(scenario);
    scenario->add_option("name", opt.scenario_name, "preset name")->required();

    app.add_subcommand("validate", "run the oracle cross-checks and print a pass/fail report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalidConfig;
    }

    try {
        if (app.got_subcommand("validate")) return run_validate();

        zeno::ConfigMap cfg = merged_config(opt);
        if (app.got_subcommand(scenario)) cfg["scenario"] = opt.scenario_name;

        zeno::ConfigMap scenario_keys = cfg;
        scenario_keys.erase("out");
        scenario_keys.erase("format");
        const zeno::Scenario sc = zeno::scenario_from_config(scenario_keys);
        if (app.got_subcommand(simulate)) {
            zeno::SweepTable rows;
            for (double phi : sc.phis) {
                const auto part = zeno::simulate_point(sc, phi, opt.tau, opt.lambda_T);
                rows.insert(rows.end(), part.begin(), part.end());
            }
            emit(rows, cfg);
        } else {
            emit(zeno::run_sweep(sc, opt.threads), cfg);
        }
    } catch (const zeno::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
    return kOk;
}
