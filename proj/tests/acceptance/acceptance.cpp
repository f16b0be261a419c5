// Acceptance suite: one PASS/FAIL line per primary criterion, followed by the
// measured quantities. Exit status is non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "zeno/analytics.hpp"
#include "zeno/correlations.hpp"
#include "zeno/dynamics.hpp"
#include "zeno/measurement.hpp"
#include "zeno/sweep.hpp"

using namespace zeno;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt2 = 0.70710678118654752;
constexpr Complex I{0.0, 1.0};

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int sign_changes(const std::vector<double>& v, double tol, int* first_down_index = nullptr) {
    int changes = 0, last = 0, last_index = -1;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const int s = v[k] > tol ? 1 : (v[k] < -tol ? -1 : 0);
        if (s == 0) continue;
        if (last != 0 && s != last) {
            if (changes == 0 && first_down_index && last > 0) *first_down_index = last_index;
            ++changes;
        }
        last = s;
        last_index = static_cast<int>(k);
    }
    return changes;
}

// Sweep rows at a single tau over the default lambda T grid, as (measured, free) pairs.
struct Slice {
    std::vector<double> T;
    std::vector<SweepRow> measured, free;
};

Slice slice_at(Scenario sc, double tau) {
    sc.tau_grid = {tau};
    const SweepTable t = run_sweep(sc);
    Slice s;
    for (std::size_t k = 0; k < t.size(); k += 2) {
        s.T.push_back(t[k].lambda_T);
        s.measured.push_back(t[k]);
        s.free.push_back(t[k + 1]);
    }
    return s;
}

std::vector<double> diff(const Slice& s, double SweepRow::*field) {
    std::vector<double> d;
    for (std::size_t k = 0; k < s.T.size(); ++k) d.push_back(s.measured[k].*field - s.free[k].*field);
    return d;
}

// ---------------------------------------------------------------------------

Outcome superradiant_identity() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double R : {0.1, 1.0})
        for (double d : {0.0, 2.0, -2.0, 5.0, -5.0}) {
            const PhysicalParams p = make_params(R, kInvSqrt2, d, d);
            for (int k = 0; k < 200; ++k) {
                const double T = 10.0 * k / 199;
                const Complex lhs = superradiant_survival(p, T);
                const Complex rhs = std::exp(I * d * T) * superradiant_element(p, T);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
    const double secs = seconds_since(t0);
    return {worst < 1e-10 && secs < 1.0, fmt("max |error| = %.3e (< 1e-10), runtime %.3f s (< 1 s)", worst, secs)};
}

Outcome oracle_chain() {
    const auto t0 = std::chrono::steady_clock::now();
    double vol = 0.0, lin = 0.0, vl = 0.0, bath_dev = 0.0;
    for (const char* name : {"fig2", "fig3"}) {
        const Scenario sc = preset(name);
        const PhysicalParams p = sc.params();
        const AmplitudeState a0 = build_initial({sc.s, sc.phis.front()});
        const double dt = 1e-3;
        const VolterraTrajectory tr = volterra_integrate(p, a0, 5.0, dt);
        FullDensity rho = FullDensity::from_amplitudes(a0);
        std::vector<double> times;
        double t_prev = 0.0;
        for (int k = 1; k <= 50; ++k) {
            const double t = 0.1 * k;
            times.push_back(t);
            const AmplitudeState ex = propagate_free(p, a0, t);
            const AmplitudeState& vo = tr.states.at(static_cast<std::size_t>(std::lround(t / dt)));
            rho = lindblad_evolve(p, rho, t - t_prev);
            t_prev = t;
            const XStateDensity x = rho.reduce();
            const double l1 = std::sqrt(std::max(0.0, x.p10)), l2 = std::sqrt(std::max(0.0, x.p01));
            vol = std::max({vol, std::abs(ex.c1 - vo.c1), std::abs(ex.c2 - vo.c2)});
            lin = std::max({lin, std::abs(std::abs(ex.c1) - l1), std::abs(std::abs(ex.c2) - l2)});
            vl = std::max({vl, std::abs(std::abs(vo.c1) - l1), std::abs(std::abs(vo.c2) - l2)});
        }
        const DiscretizedBath bath = DiscretizedBath::make(make_spectrum(p), 4000, 40.0);
        const auto out = discretized_bath_evolve(p, bath, a0, times);
        for (std::size_t k = 0; k < times.size(); ++k) {
            const AmplitudeState ex = propagate_free(p, a0, times[k]);
            bath_dev = std::max({bath_dev, std::abs(std::abs(ex.c1) - std::abs(out[k].c1)),
                                 std::abs(std::abs(ex.c2) - std::abs(out[k].c2))});
        }
    }
    const double secs = seconds_since(t0);
    const bool ok = vol < 1e-6 && lin < 1e-6 && vl < 1e-6 && bath_dev < 1e-3 && secs < 120.0;
    return {ok, fmt("propagator-memory %.2e, propagator-master %.2e, memory-master %.2e (< 1e-6); "
                    "bath %.2e (< 1e-3); runtime %.1f s (< 120 s)",
                    vol, lin, vl, bath_dev, secs)};
}

// Trajectories with equal couplings and mirrored or equal detunings.
std::vector<std::pair<PhysicalParams, InitialState>> symmetric_cases() {
    std::vector<std::pair<PhysicalParams, InitialState>> cases;
    for (double R : {0.1, 1.0})
        for (auto [d1, d2] : {std::pair{2.0, 2.0}, std::pair{2.0, -2.0}, std::pair{0.0, 0.0}, std::pair{5.0, -5.0}})
            for (double phi : {0.0, kPi / 3, kPi / 2, kPi}) {
                // equal detunings keep |c1| = |c2| only for the (anti)symmetric states
                if (d1 == d2 && phi != 0.0 && phi != kPi) continue;
                cases.push_back({make_params(R, kInvSqrt2, d1, d2), InitialState{0.0, phi}});
            }
    return cases;
}

Outcome modulus_symmetry() {
    double worst = 0.0;
    for (const auto& [p, init] : symmetric_cases()) {
        const AmplitudeState a0 = build_initial(init);
        for (int k = 0; k <= 600; ++k) {
            const AmplitudeState a = propagate_free(p, a0, 0.01 * k);
            worst = std::max(worst, std::abs(std::abs(a.c1) - std::abs(a.c2)));
        }
    }
    return {worst < 1e-9, fmt("max_t ||c1| - |c2|| = %.3e (< 1e-9)", worst)};
}

Outcome discord_concurrence() {
    double traj = 0.0;
    for (const auto& [p, init] : symmetric_cases()) {
        const AmplitudeState a0 = build_initial(init);
        for (int k = 0; k <= 600; k += 5) {
            const XStateDensity x = reduce_to_xstate(propagate_free(p, a0, 0.01 * k));
            traj = std::max(traj, std::abs(discord(x) - concurrence(x)));
        }
    }
    double fam_d = 0.0, fam_c = 0.0;
    for (int a = 0; a <= 20; ++a)
        for (int t = 0; t < 8; ++t) {
            const double alpha = a / 20.0, theta = 2.0 * kPi * t / 8;
            const XStateDensity x{1.0 - alpha, alpha / 2, alpha / 2, alpha / 2 * std::polar(1.0, -theta)};
            fam_d = std::max(fam_d, std::abs(discord(x) - alpha));
            fam_c = std::max(fam_c, std::abs(concurrence(x) - alpha));
        }
    return {traj < 1e-6 && fam_d < 1e-6 && fam_c < 1e-10,
            fmt("trajectories |D - C| = %.2e (< 1e-6); family |D - a| = %.2e (< 1e-6), |C - a| = %.2e (< 1e-10)", traj,
                fam_d, fam_c)};
}

Outcome classical_optimizer() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_value = 0.0, worst_theta = 0.0, worst_slice = 0.0;
    int off_basis = 0;
    for (int k = 0; k < 500; ++k) {
        const double p10 = u(rng), p01 = u(rng) * (1.0 - p10);
        const XStateDensity x{1.0 - p10 - p01, p01, p10, std::sqrt(p10 * p01) * std::polar(1.0, 2 * kPi * u(rng))};
        const ClassicalOptimum opt = classical_optimized(x, 64);
        const double dv = std::abs(opt.value - classical_closed(p10, p01));
        const double dth = std::min(std::abs(opt.theta), std::abs(opt.theta - kPi / 2));
        worst_value = std::max(worst_value, dv);
        worst_theta = std::max(worst_theta, dth);
        if (dv > 1e-6) ++off_basis;
        double lo = 1e300, hi = -1e300;
        for (int m = 0; m < 64; ++m) {
            const double v = classical_measurement_value(x, opt.theta, 2 * kPi * m / 64);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        worst_slice = std::max(worst_slice, hi - lo);
    }
    const double secs = seconds_since(t0);
    const bool ok = worst_value < 1e-6 && worst_theta < 1e-4 && worst_slice < 1e-9 && secs < 60.0;
    return {ok, fmt("max |optimum - closed form| = %.3e (< 1e-6, exceeded on %d/500 states); "
                    "max argmax-theta distance from {0, pi/2} = %.3e (< 1e-4); phi-slice spread %.2e (< 1e-9); "
                    "runtime %.1f s (< 60 s)",
                    worst_value, off_basis, worst_theta, worst_slice, secs)};
}

Outcome zeno_rate_limits() {
    double short_dev = 0.0, long_dev = 0.0, agree = 0.0;
    for (const char* name : {"fig2", "fig3"})
        for (double d : {0.0, 2.0}) {
            Scenario sc = preset(name);
            if (d == 0.0) sc.delta1 = sc.delta2 = 0.0;
            const PhysicalParams p = sc.params();
            const LorentzianSpectrum J = make_spectrum(p);
            for (int j = 1; j <= 2; ++j) {
                const double a2W2 = p.coupling(j) * p.coupling(j);
                short_dev = std::max(short_dev, std::abs(zeno_rates(J, p, j, 1e-4).gamma / (a2W2 * 1e-4 / 2) - 1.0));
                long_dev = std::max(long_dev, std::abs(zeno_rates(J, p, j, 50.0).gamma / markov_rate(J, p, j) - 1.0));
                for (double T : linspace(0.02, 2.0, 40)) {
                    const ZenoRates r = zeno_rates(J, p, j, T);
                    agree = std::max(agree, std::abs(r.gamma - r.gamma_residue) / std::abs(r.gamma_residue));
                }
            }
        }
    return {short_dev < 0.01 && long_dev < 0.01 && agree < 1e-7,
            fmt("short-interval ratio deviation %.2e (< 1e-2); long-interval/Markov deviation %.2e (< 1e-2); "
                "quadrature vs residue %.2e (< 1e-7)",
                short_dev, long_dev, agree)};
}

Outcome resonant_zeno() {
    const PhysicalParams p = make_params(0.1, kInvSqrt2, 0.0, 0.0);
    const InitialState init{0.0, 0.0};
    const XStateDensity meas = measured_evolution_exact(p, init, {0.05, 40}).back();
    const XStateDensity free = reduce_to_xstate(propagate_free(p, build_initial(init), 2.0));
    const CorrelationRecord m = correlation_record(meas), f = correlation_record(free);
    return {m.concurrence > f.concurrence && m.classical > f.classical && m.discord > f.discord,
            fmt("measured (C, classical, D) = (%.6f, %.6f, %.6f) vs free (%.6f, %.6f, %.6f)", m.concurrence,
                m.classical, m.discord, f.concurrence, f.classical, f.discord)};
}

Outcome anti_zeno_threshold() {
    const Slice s = slice_at(preset("fig2"), 2.0);
    const std::vector<double> d = diff(s, &SweepRow::concurrence);
    int down = -1;
    const int changes = sign_changes(d, 1e-6, &down);
    std::string crossings;
    for (std::size_t k = 0; k + 1 < d.size(); ++k)
        if ((d[k] > 1e-6 && d[k + 1] < -1e-6) || (d[k] < -1e-6 && d[k + 1] > 1e-6)) {
            const double Tc = s.T[k] + (s.T[k + 1] - s.T[k]) * d[k] / (d[k] - d[k + 1]);
            crossings += fmt(" %s at lambda T ~ %.3f;", d[k] > 0 ? "+ to -" : "- to +", Tc);
        }
    const bool ok = changes == 1 && d.front() > 0 && down >= 0;
    return {ok, fmt("sign changes of (measured - free) concurrence at tau = 2: %d (need exactly 1, + to -);%s",
                    changes, crossings.c_str())};
}

Outcome zeno_oscillations() {
    const Slice s = slice_at(preset("fig3"), 2.0);
    const int cc = sign_changes(diff(s, &SweepRow::concurrence), 1e-6);
    const int cl = sign_changes(diff(s, &SweepRow::classical), 1e-6);
    return {cc >= 2 && cl >= 2, fmt("sign changes at tau = 2: concurrence %d, classical %d (each >= 2)", cc, cl)};
}

double linf(const SweepTable& a, const SweepTable& b, bool measured, double SweepRow::*field) {
    double m = 0.0;
    for (std::size_t k = measured ? 0 : 1; k < a.size(); k += 2) m = std::max(m, std::abs(a[k].*field - b[k].*field));
    return m;
}

Outcome phase_sensitivity() {
    const SweepTable f3 = run_sweep(preset("fig3"));
    const SweepTable f4 = run_sweep(preset("fig4"));
    Scenario f2pi = preset("fig2");
    f2pi.phis = {kPi};
    const SweepTable f2a = run_sweep(preset("fig2"));
    const SweepTable f2b = run_sweep(f2pi);
    const double opposite = linf(f3, f4, true, &SweepRow::concurrence);
    const double equal = linf(f2a, f2b, true, &SweepRow::concurrence);
    const double free_classical = linf(f3, f4, false, &SweepRow::classical);
    return {opposite > 0.05 && equal < 0.05 && free_classical < 1e-9,
            fmt("opposite detunings: measured-concurrence L_inf %.4f (> 0.05); equal detunings: %.4f (< 0.05); "
                "free classical phi-dependence %.3e (< 1e-9)",
                opposite, equal, free_classical)};
}

Outcome subradiant_stationarity() {
    Scenario sc = preset("fig2");
    sc.phis = {kPi};
    sc.tau_grid = linspace(0.0, 6.0, 61);
    const SweepTable t = run_sweep(sc);
    double worst = 0.0;
    for (const auto& r : t)
        worst = std::max({worst, std::abs(r.concurrence - 1.0), std::abs(r.discord - 1.0), std::abs(r.classical - 1.0)});
    return {worst < 1e-6, fmt("max deviation from 1 over %zu measured and free rows: %.3e (< 1e-6)", t.size(), worst)};
}

Outcome series_consistency() {
    const PhysicalParams p = make_params(0.1, kInvSqrt2, 2.0, -2.0);
    const EvolutionMatrix base = evolution_matrix(p, 0.5);
    const double off = std::max(std::abs(base(1, 2)), std::abs(base(2, 1)));
    std::vector<double> xs, ys;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
        EvolutionMatrix E = base;
        E.m(0, 1) *= eps / off;
        E.m(1, 0) *= eps / off;
        const double err = (coarse_grained_series(E, 10).m - matrix_power(E, 10).m).cwiseAbs().maxCoeff();
        xs.push_back(std::log10(eps));
        ys.push_back(std::log10(err));
    }
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) mx += xs[k] / xs.size(), my += ys[k] / ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) sxy += (xs[k] - mx) * (ys[k] - my), sxx += (xs[k] - mx) * (xs[k] - mx);
    const double slope = sxy / sxx;

    double rel = 0.0;
    for (const char* name : {"fig2", "fig3"})
        for (double T : {0.1, 0.25, 0.5}) {
            const PhysicalParams q = preset(name).params();
            const EvolutionMatrix E = evolution_matrix(q, T);
            const EvolutionMatrix S = coarse_grained_series(E, 10), B = coarse_grained_badcavity(E, 10);
            rel = std::max(rel, (S.m - B.m).cwiseAbs().maxCoeff() / S.m.cwiseAbs().maxCoeff());
        }
    return {slope >= 2.7 && rel < 1e-2,
            fmt("log-log slope %.3f (>= 2.7); bad-cavity vs series relative %.2e (< 1e-2)", slope, rel)};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"superradiant closed form vs propagator", superradiant_identity},
        {"oracle chain between engines", oracle_chain},
        {"equal-modulus symmetry", modulus_symmetry},
        {"discord-concurrence coincidence", discord_concurrence},
        {"classical-correlation optimizer", classical_optimizer},
        {"zeno rate limits", zeno_rate_limits},
        {"resonant zeno protection", resonant_zeno},
        {"anti-zeno threshold (equal detunings)", anti_zeno_threshold},
        {"zeno/anti-zeno oscillations (opposite detunings)", zeno_oscillations},
        {"phase sensitivity", phase_sensitivity},
        {"subradiant stationarity", subradiant_stationarity},
        {"series consistency", series_consistency},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = criteria[k].run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("[%s] %2zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].name, o.detail.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
