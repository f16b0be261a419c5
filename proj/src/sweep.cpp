#include "zeno/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "zeno/correlations.hpp"

namespace zeno {

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<std::string>& columns() {
    static const std::vector<std::string> cols{"method", "s",       "phi",         "delta1",    "delta2",  "r1",
                                               "R",      "lambda_T", "tau",        "c1_abs",    "c2_abs",  "concurrence",
                                               "classical", "discord", "mutual_info", "regime_flag"};
    return cols;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidParameter, "config key '" + key + "': not a number: '" + text + "'");
    }
}

// Phase given in the config, accepting "pi" and "-pi" for convenience.
double parse_phase(const std::string& text) {
    const std::string t = trim(text);
    if (t == "pi") return kPi;
    if (t == "-pi") return -kPi;
    return parse_double("phi", t);
}

void check_grid(const std::vector<double>& g, const char* what) {
    if (g.empty()) throw Error(ErrorKind::InvalidParameter, std::string(what) + " grid is empty");
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!std::isfinite(g[k])) throw Error(ErrorKind::InvalidParameter, std::string(what) + " grid has non-finite values");
        if (k > 0 && !(g[k] > g[k - 1]))
            throw Error(ErrorKind::InvalidParameter, std::string(what) + " grid must be strictly increasing");
    }
}

SweepRow base_row(const Scenario& sc, double phi, double lambda_T, double tau) {
    SweepRow r;
    r.s = sc.s;
    r.phi = phi;
    r.delta1 = sc.delta1;
    r.delta2 = sc.delta2;
    r.r1 = sc.r1;
    r.R = sc.R;
    r.lambda_T = lambda_T;
    r.tau = tau;
    return r;
}

void fill_state(SweepRow& r, const XStateDensity& x) {
    const CorrelationRecord c = correlation_record(x);
    r.c1_abs = std::sqrt(std::max(0.0, x.p10));
    r.c2_abs = std::sqrt(std::max(0.0, x.p01));
    r.concurrence = c.concurrence;
    r.classical = c.classical;
    r.discord = c.discord;
    r.mutual_info = c.mutual_info;
}

long intervals_before(double tau, double T) {
    // measurements at every kT <= tau; the tolerance keeps grid points that sit on a multiple of T
    return static_cast<long>(std::floor(tau / T + 1e-9));
}

XStateDensity free_state(const PhysicalParams& p, const InitialState& init, double tau) {
    return reduce_to_xstate(propagate_free(p, build_initial(init), tau));
}

// Measured states for every tau of the grid at one interval T.
std::vector<XStateDensity> measured_column(const Scenario& sc, const InitialState& init,
                                           const std::vector<double>& taus, double T) {
    const PhysicalParams p = sc.params();
    std::vector<XStateDensity> out(taus.size());
    if (sc.method == SurvivalMethod::Exact) {
        const long n_max = intervals_before(taus.back(), T);
        const std::vector<FullDensity> traj = measured_trajectory_exact(p, init, {T, n_max});
        for (std::size_t k = 0; k < taus.size(); ++k) {
            const long n = intervals_before(taus[k], T);
            const double rest = taus[k] - static_cast<double>(n) * T;
            const FullDensity& rho = traj[static_cast<std::size_t>(n)];
            out[k] = rest > 1e-12 ? lindblad_evolve(p, rho, rest).reduce() : rho.reduce();
        }
        return out;
    }
    for (std::size_t k = 0; k < taus.size(); ++k) {
        const long n = intervals_before(taus[k], T);
        const double rest = taus[k] - static_cast<double>(n) * T;
        const SurvivalResult res = survival_amplitudes_N(p, init, {T, n}, sc.method);
        const auto& c = *res.amplitudes;
        out[k] = reduce_to_xstate(propagate_free(p, {c[0], c[1], 0.0}, std::max(0.0, rest)), 1e-6);
    }
    return out;
}

// Runs job(k) for k in [0, n) on a pool of threads; each job writes only its own slot.
template <class Job>
void parallel_for(std::size_t n, int workers, Job job) {
    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t k = next++; k < n; k = next++) {
            try {
                job(k);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::Zeno: return "zeno";
        case Regime::AntiZeno: return "anti-zeno";
        case Regime::Neutral: return "neutral";
    }
    return "neutral";
}

Regime parse_regime(std::string_view label) {
    if (label == "zeno") return Regime::Zeno;
    if (label == "anti-zeno") return Regime::AntiZeno;
    if (label == "neutral") return Regime::Neutral;
    throw Error(ErrorKind::InvalidParameter, "unknown regime flag '" + std::string(label) + "'");
}

Regime classify_regime(double measured, double free, double tol) {
    if (measured > free + tol) return Regime::Zeno;
    if (measured < free - tol) return Regime::AntiZeno;
    return Regime::Neutral;
}

void Scenario::validate() const {
    params().validate();
    for (double phi : phis) InitialState{s, phi}.validate();
    if (phis.empty()) throw Error(ErrorKind::InvalidParameter, "no initial phase given");
    check_grid(tau_grid, "tau");
    if (tau_grid.front() < 0.0) throw Error(ErrorKind::InvalidParameter, "tau grid must be >= 0");
    if (measured) {
        check_grid(T_grid, "lambda_T");
        if (!(T_grid.front() > 0.0)) throw Error(ErrorKind::InvalidParameter, "lambda_T grid must be > 0");
    }
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw Error(ErrorKind::InvalidParameter, "grid needs at least one point");
    if (n == 1) return {lo};
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (n - 1);
    g.back() = hi;
    return g;
}

std::vector<double> default_tau_grid() { return linspace(0.0, 6.0, 60); }
std::vector<double> default_T_grid() { return linspace(0.02, 2.0, 40); }

std::vector<std::string> preset_names() { return {"fig1a", "fig1b", "fig2", "fig3", "fig4"}; }

Scenario preset(const std::string& name) {
    Scenario sc;
    sc.name = name;
    sc.R = 0.1;
    sc.r1 = 1.0 / std::numbers::sqrt2;
    sc.s = 0.0;
    sc.tau_grid = default_tau_grid();
    sc.T_grid = default_T_grid();
    if (name == "fig1a" || name == "fig1b") {
        sc.delta1 = 2.0;
        sc.delta2 = name == "fig1a" ? 2.0 : -2.0;
        sc.phis = {0.0, kPi};
        sc.measured = false;
        sc.T_grid.clear();
    } else if (name == "fig2") {
        sc.delta1 = sc.delta2 = 2.0;
        sc.phis = {0.0};
    } else if (name == "fig3" || name == "fig4") {
        sc.delta1 = 2.0;
        sc.delta2 = -2.0;
        sc.phis = {name == "fig3" ? 0.0 : kPi};
    } else {
        throw Error(ErrorKind::InvalidParameter, "unknown scenario '" + name + "'");
    }
    return sc;
}

SweepTable simulate_point(const Scenario& sc, double phi, double tau, double lambda_T) {
    Scenario one = sc;
    one.phis = {phi};
    one.tau_grid = {tau};
    one.T_grid = {lambda_T};
    return run_sweep(one, 1);
}

SweepTable run_sweep(const Scenario& sc, int workers) {
    sc.validate();
    const PhysicalParams p = sc.params();
    const auto& taus = sc.tau_grid;
    SweepTable table;

    if (!sc.measured) {
        table.resize(sc.phis.size() * taus.size());
        parallel_for(table.size(), workers, [&](std::size_t k) {
            const double phi = sc.phis[k / taus.size()];
            const double tau = taus[k % taus.size()];
            SweepRow r = base_row(sc, phi, 0.0, tau);
            r.method = "free";
            fill_state(r, free_state(p, {sc.s, phi}, tau));
            table[k] = r;
        });
        return table;
    }

    const auto& Ts = sc.T_grid;
    const std::size_t per_phi = taus.size() * Ts.size() * 2;
    table.resize(sc.phis.size() * per_phi);
    for (std::size_t a = 0; a < sc.phis.size(); ++a) {
        const InitialState init{sc.s, sc.phis[a]};
        std::vector<XStateDensity> free(taus.size());
        for (std::size_t k = 0; k < taus.size(); ++k) free[k] = free_state(p, init, taus[k]);

        parallel_for(Ts.size(), workers, [&](std::size_t b) {
            const std::vector<XStateDensity> meas = measured_column(sc, init, taus, Ts[b]);
            for (std::size_t k = 0; k < taus.size(); ++k) {
                SweepRow m = base_row(sc, init.phi, Ts[b], taus[k]);
                m.method = std::string(to_string(sc.method));
                fill_state(m, meas[k]);
                SweepRow f = base_row(sc, init.phi, Ts[b], taus[k]);
                f.method = "free";
                fill_state(f, free[k]);
                m.regime = classify_regime(m.concurrence, f.concurrence);
                const std::size_t at = a * per_phi + (k * Ts.size() + b) * 2;
                table[at] = m;
                table[at + 1] = f;
            }
        });
    }
    return table;
}

SweepTable run_scenario(const std::string& name, int workers) { return run_sweep(preset(name), workers); }

ExportFormat parse_format(std::string_view label) {
    if (label == "csv") return ExportFormat::Csv;
    if (label == "json") return ExportFormat::Json;
    throw Error(ErrorKind::InvalidParameter, "unknown export format '" + std::string(label) + "'");
}

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    if (std::string_view(buf) == "-0") return "0";
    return buf;
}

const std::string& csv_header() {
    static const std::string header = [] {
        std::string h;
        for (const auto& c : columns()) h += (h.empty() ? "" : ",") + c;
        return h;
    }();
    return header;
}

std::string to_csv(const SweepTable& t) {
    std::ostringstream os;
    os << csv_header() << '\n';
    for (const auto& r : t) {
        os << r.method;
        for (double v : {r.s, r.phi, r.delta1, r.delta2, r.r1, r.R, r.lambda_T, r.tau, r.c1_abs, r.c2_abs,
                         r.concurrence, r.classical, r.discord, r.mutual_info})
            os << ',' << format_number(v);
        os << ',' << to_string(r.regime) << '\n';
    }
    return os.str();
}

namespace {

double rounded(double v) { return std::stod(format_number(v)); }

double* field(SweepRow& r, const std::string& name) {
    if (name == "s") return &r.s;
    if (name == "phi") return &r.phi;
    if (name == "delta1") return &r.delta1;
    if (name == "delta2") return &r.delta2;
    if (name == "r1") return &r.r1;
    if (name == "R") return &r.R;
    if (name == "lambda_T") return &r.lambda_T;
    if (name == "tau") return &r.tau;
    if (name == "c1_abs") return &r.c1_abs;
    if (name == "c2_abs") return &r.c2_abs;
    if (name == "concurrence") return &r.concurrence;
    if (name == "classical") return &r.classical;
    if (name == "discord") return &r.discord;
    if (name == "mutual_info") return &r.mutual_info;
    return nullptr;
}

}  // namespace

std::string to_json(const SweepTable& t) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (SweepRow r : t) {
        nlohmann::ordered_json o;
        for (const auto& c : columns()) {
            if (c == "method") o[c] = r.method;
            else if (c == "regime_flag") o[c] = std::string(to_string(r.regime));
            else o[c] = rounded(*field(r, c));
        }
        rows.push_back(std::move(o));
    }
    nlohmann::ordered_json doc;
    doc["columns"] = columns();
    doc["rows"] = std::move(rows);
    return doc.dump(1) + "\n";
}

SweepTable from_json(const std::string& text) {
    SweepTable t;
    try {
        const auto doc = nlohmann::json::parse(text);
        if (doc.at("columns").get<std::vector<std::string>>() != columns())
            throw Error(ErrorKind::InvalidParameter, "JSON table has unexpected columns");
        for (const auto& o : doc.at("rows")) {
            SweepRow r;
            r.method = o.at("method").get<std::string>();
            r.regime = parse_regime(o.at("regime_flag").get<std::string>());
            for (const auto& c : columns())
                if (double* f = field(r, c)) *f = o.at(c).get<double>();
            t.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidParameter, std::string("malformed JSON table: ") + e.what());
    }
    return t;
}

SweepTable from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorKind::InvalidParameter, "CSV is empty");
    if (trim(line) != csv_header()) {
        std::vector<std::string> got;
        std::stringstream hs(trim(line));
        for (std::string cell; std::getline(hs, cell, ',');) got.push_back(cell);
        std::string diff;
        for (const auto& c : columns())
            if (std::find(got.begin(), got.end(), c) == got.end()) diff += " -" + c;
        for (const auto& c : got)
            if (std::find(columns().begin(), columns().end(), c) == columns().end()) diff += " +" + c;
        if (diff.empty()) diff = " (column order differs)";
        throw Error(ErrorKind::InvalidParameter, "CSV header does not match the sweep schema:" + diff);
    }
    SweepTable t;
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ls(trim(line));
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        if (cells.size() != columns().size())
            throw Error(ErrorKind::InvalidParameter, "CSV row has " + std::to_string(cells.size()) + " cells");
        SweepRow r;
        r.method = cells.front();
        r.regime = parse_regime(cells.back());
        for (std::size_t k = 1; k + 1 < cells.size(); ++k) *field(r, columns()[k]) = parse_double(columns()[k], cells[k]);
        t.push_back(std::move(r));
    }
    return t;
}

void export_table(const SweepTable& t, const std::filesystem::path& path, ExportFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
    out << (format == ExportFormat::Csv ? to_csv(t) : to_json(t));
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write to '" + path.string() + "' failed");
}

ConfigMap parse_config(const std::string& text) {
    ConfigMap cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::InvalidParameter, "config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw Error(ErrorKind::InvalidParameter, "config line " + std::to_string(lineno) + ": empty key");
        cfg[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

ConfigMap read_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read config '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::vector<double> parse_grid(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw Error(ErrorKind::InvalidParameter, "empty grid");
    if (t.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(t);
        for (std::string part; std::getline(ss, part, ':');) parts.push_back(trim(part));
        if (parts.size() != 3) throw Error(ErrorKind::InvalidParameter, "grid '" + t + "': expected lo:hi:n");
        const double n = parse_double("grid", parts[2]);
        if (n < 1 || n != std::floor(n) || n > 1e6)
            throw Error(ErrorKind::InvalidParameter, "grid '" + t + "': point count must be a positive integer");
        return linspace(parse_double("grid", parts[0]), parse_double("grid", parts[1]), static_cast<int>(n));
    }
    std::vector<double> g;
    std::stringstream ss(t);
    for (std::string part; std::getline(ss, part, ',');) g.push_back(parse_double("grid", trim(part)));
    return g;
}

Scenario scenario_from_config(const ConfigMap& cfg) {
    static const std::vector<std::string> known{"scenario", "R",      "r1",     "delta1", "delta2", "s",
                                                "phi",      "tau_grid", "T_grid", "method", "out",    "format"};
    for (const auto& [k, v] : cfg)
        if (std::find(known.begin(), known.end(), k) == known.end())
            throw Error(ErrorKind::InvalidParameter, "unknown config key '" + k + "'");

    Scenario sc;
    if (auto it = cfg.find("scenario"); it != cfg.end() && !it->second.empty()) {
        sc = preset(it->second);
    } else {
        sc.name = "custom";
        sc.tau_grid = default_tau_grid();
        sc.T_grid = default_T_grid();
    }
    auto number = [&](const char* key, double& target) {
        if (auto it = cfg.find(key); it != cfg.end()) target = parse_double(key, it->second);
    };
    number("R", sc.R);
    number("r1", sc.r1);
    number("delta1", sc.delta1);
    number("delta2", sc.delta2);
    number("s", sc.s);
    if (auto it = cfg.find("phi"); it != cfg.end()) {
        sc.phis.clear();
        std::stringstream ss(it->second);
        for (std::string part; std::getline(ss, part, ',');) sc.phis.push_back(parse_phase(part));
    }
    if (auto it = cfg.find("tau_grid"); it != cfg.end()) sc.tau_grid = parse_grid(it->second);
    if (auto it = cfg.find("T_grid"); it != cfg.end()) {
        sc.T_grid = parse_grid(it->second);
        sc.measured = true;
    }
    if (auto it = cfg.find("method"); it != cfg.end()) {
        if (it->second == "free") {
            sc.measured = false;
        } else {
            sc.method = parse_survival_method(it->second);
            sc.measured = true;
            if (sc.T_grid.empty()) sc.T_grid = default_T_grid();
        }
    }
    sc.validate();
    return sc;
}

}  // namespace zeno
