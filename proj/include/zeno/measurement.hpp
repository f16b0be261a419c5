#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "zeno/core.hpp"
#include "zeno/dynamics.hpp"

namespace zeno {

/// Amplitude map on span{|10>, |01>} over one measurement interval.
struct EvolutionMatrix {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();

    Complex operator()(int j, int i) const { return m(j - 1, i - 1); }  // 1-based like E_ji
    double spectral_radius() const;
};

struct MeasurementSchedule {
    double T = 0.1;  ///< interval between measurements
    long N = 0;      ///< number of measurements

    void validate() const;
    double total_time() const { return static_cast<double>(N) * T; }
};

/// Pi0 rho Pi0 + Pi1 rho Pi1 with Pi1 = span{e1, e2}, Pi0 = span{e3, e4}.
FullDensity nonselective_measure(const FullDensity& rho);

/// Exact channel: alternate lindblad_evolve over T and a nonselective
/// measurement, N times. Returns the full density at t = kT, k = 0..N.
std::vector<FullDensity> measured_trajectory_exact(const PhysicalParams& p, const InitialState& init,
                                                   const MeasurementSchedule& sched,
                                                   const LindbladOptions& opts = {});

/// Reduced qubit states of measured_trajectory_exact.
std::vector<XStateDensity> measured_evolution_exact(const PhysicalParams& p, const InitialState& init,
                                                    const MeasurementSchedule& sched,
                                                    const LindbladOptions& opts = {});

/// Qubit block of the cavity-frame free propagator over one interval T.
EvolutionMatrix evolution_matrix(const PhysicalParams& p, double T);

/// Convert a cavity-frame amplitude map over [0, T] to the frame rotating
/// with each qubit, E^q_ji = e^{i delta_j T} E_ji.
EvolutionMatrix to_qubit_frame(const EvolutionMatrix& E, const PhysicalParams& p, double T);

/// Second-order coarse-grained series for the N-interval amplitude map,
/// evaluated term by term as printed (Heaviside-gated correction sums).
EvolutionMatrix coarse_grained_series(const EvolutionMatrix& E, long N);

/// Bad-cavity truncation: diagonal powers and the first-order transfer sum.
EvolutionMatrix coarse_grained_badcavity(const EvolutionMatrix& E, long N);

/// Exact N-th power of the 2x2 map.
EvolutionMatrix matrix_power(const EvolutionMatrix& E, long N);

enum class SurvivalMethod { Exact, Series, BadCavity, Power };

SurvivalMethod parse_survival_method(std::string_view label);
std::string_view to_string(SurvivalMethod m);

struct SurvivalResult {
    SurvivalMethod method = SurvivalMethod::Exact;
    XStateDensity state;
    /// (c1^(N), c2^(N)) for the amplitude methods; empty for Exact.
    std::optional<std::array<Complex, 2>> amplitudes;
};

/// State after N measurements at interval T. Amplitude methods apply the
/// coarse-grained map to (c01, c02) in the cavity frame.
SurvivalResult survival_amplitudes_N(const PhysicalParams& p, const InitialState& init,
                                     const MeasurementSchedule& sched, SurvivalMethod method);

}  // namespace zeno
