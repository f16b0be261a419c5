#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "zeno/core.hpp"
#include "zeno/measurement.hpp"

namespace zeno {

enum class Regime { Zeno, AntiZeno, Neutral };

std::string_view to_string(Regime r);
Regime parse_regime(std::string_view label);

/// zeno if measured > free + tol, anti-zeno if measured < free - tol, neutral otherwise.
Regime classify_regime(double measured, double free, double tol = 1e-6);

/// A named parameter set plus the (tau, lambda T) grids to sweep.
/// Grids are dimensionless: tau = lambda t, and lambda T.
struct Scenario {
    std::string name;
    double R = 0.1;
    double r1 = 0.70710678118654752;
    double delta1 = 2.0;  ///< in units of lambda
    double delta2 = 2.0;
    double s = 0.0;
    /// One entry per initial phase; free-only scenarios may overlay several.
    std::vector<double> phis{0.0};
    std::vector<double> tau_grid;
    std::vector<double> T_grid;
    SurvivalMethod method = SurvivalMethod::Exact;
    /// When false only free-evolution rows are produced (lambda_T = 0).
    bool measured = true;

    PhysicalParams params() const { return make_params(R, r1, delta1, delta2, 1.0); }
    /// Throws InvalidParameter on empty or non-increasing grids and bad physics.
    void validate() const;
};

/// n points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int n);
std::vector<double> default_tau_grid();  ///< 60 points in [0, 6]
std::vector<double> default_T_grid();    ///< 40 points in [0.02, 2]

/// Frozen presets fig1a, fig1b, fig2, fig3, fig4 (InvalidParameter otherwise).
Scenario preset(const std::string& name);
std::vector<std::string> preset_names();

struct SweepRow {
    std::string method;
    double s = 0.0;
    double phi = 0.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double r1 = 0.0;
    double R = 0.0;
    double lambda_T = 0.0;
    double tau = 0.0;
    double c1_abs = 0.0;
    double c2_abs = 0.0;
    double concurrence = 0.0;
    double classical = 0.0;
    double discord = 0.0;
    double mutual_info = 0.0;
    Regime regime = Regime::Neutral;

    bool operator==(const SweepRow&) const = default;
};

using SweepTable = std::vector<SweepRow>;

/// Comma-separated CSV header in SweepRow field order.
const std::string& csv_header();

/// Measured state at (tau, lambda T): a nonselective measurement at every kT <= tau,
/// then free evolution for the remaining tau - NT. Rows come out tau outer, lambda T
/// inner, each measured row followed by the matching free row (regime neutral).
/// Free-only scenarios emit phi outer, tau inner. `workers` <= 0 picks the hardware count;
/// the output does not depend on it.
SweepTable run_sweep(const Scenario& sc, int workers = 0);

/// Measured and free rows for a single (tau, lambda T) point.
SweepTable simulate_point(const Scenario& sc, double phi, double tau, double lambda_T);

SweepTable run_scenario(const std::string& name, int workers = 0);

enum class ExportFormat { Csv, Json };
ExportFormat parse_format(std::string_view label);

std::string format_number(double v);
std::string to_csv(const SweepTable& t);
std::string to_json(const SweepTable& t);
SweepTable from_json(const std::string& text);
SweepTable from_csv(const std::string& text);

/// Writes the table; throws Io with the path in the message on failure.
void export_table(const SweepTable& t, const std::filesystem::path& path, ExportFormat format);

/// Flat key=value configuration; '#' starts a comment, blank lines ignored.
using ConfigMap = std::map<std::string, std::string>;
ConfigMap parse_config(const std::string& text);
ConfigMap read_config(const std::filesystem::path& path);

/// Grid syntax: "lo:hi:n" (inclusive linspace) or a comma list.
std::vector<double> parse_grid(const std::string& text);

/// Applies the recognised keys (scenario, R, r1, delta1, delta2, s, phi, tau_grid,
/// T_grid, method) on top of a preset or the defaults. Unknown keys, other than
/// out and format, are rejected.
Scenario scenario_from_config(const ConfigMap& cfg);

}  // namespace zeno
