#pragma once

#include <span>
#include <vector>

#include "zeno/core.hpp"

namespace zeno {

/// Local generator of the single-excitation amplitudes (c1, c2, b) in the
/// frame rotating at the cavity frequency. The Lorentzian memory kernel is
/// carried by the damped pseudomode amplitude b.
struct Generator3 {
    Eigen::Matrix3cd M;

    static Generator3 from(const PhysicalParams& p);
    Eigen::Vector3cd apply(const Eigen::Vector3cd& v) const { return M * v; }
};

enum class ExpmPath { Eigen, ScalingSquaring };

struct Propagator3 {
    Eigen::Matrix3cd U;
    ExpmPath path = ExpmPath::Eigen;
};

/// exp(M t) by eigendecomposition; falls back to scaling-and-squaring when two
/// eigenvalues are closer than `degeneracy_gap` (absolute, in rate units).
Propagator3 exp_generator(const Eigen::Matrix3cd& M, double t, double degeneracy_gap);

/// exp(M t) for the generator of `p`; the gap threshold is 1e-8 * lambda.
Propagator3 free_propagator(const PhysicalParams& p, double t);

AmplitudeState propagate_free(const PhysicalParams& p, const AmplitudeState& a, double t);

/// Survival amplitude of the superradiant state r1|10> + r2|01> in the qubit frame,
/// closed form valid for delta1 == delta2. Throws WrongRegime otherwise.
Complex superradiant_survival(const PhysicalParams& p, double T);

/// <S| exp(M T) |S> on the qubit block of the cavity-frame propagator.
Complex superradiant_element(const PhysicalParams& p, double T);

struct LindbladOptions {
    /// Multiplies the default step bound. Values <= 0 are rejected.
    double step_scale = 0.25;
};

/// Fixed-step RK4 evolution of the 4-level density under the coherent
/// qubit/pseudomode Hamiltonian plus decay e3 -> e4 at rate 2 lambda.
FullDensity lindblad_evolve(const PhysicalParams& p, const FullDensity& rho, double t,
                            const LindbladOptions& opts = {});

/// Largest RK4 step lindblad_evolve will take for an interval of length t.
double lindblad_step(const PhysicalParams& p, double t, const LindbladOptions& opts = {});

struct VolterraTrajectory {
    std::vector<double> times;
    /// Cavity-frame amplitudes; b holds sqrt of the norm deficit (real, >= 0).
    std::vector<AmplitudeState> states;
};

/// Trapezoidal product-integration solver for the memory-kernel equations of
/// the qubit amplitudes with kernel alpha_j alpha_i W^2 exp(-lambda t').
/// Requires init.b == 0 and dt <= 1 / (100 lambda).
VolterraTrajectory volterra_integrate(const PhysicalParams& p, const AmplitudeState& init, double t_max,
                                      double dt);

/// Uniform discretization of the Lorentzian continuum into bath modes.
struct DiscretizedBath {
    std::vector<double> omega;
    std::vector<double> g;
    double d_omega = 0.0;
    double half_width = 0.0;

    /// Midpoint grid on [-half_width, half_width] with g_k = sqrt(J(w_k) dw).
    static DiscretizedBath make(const LorentzianSpectrum& J, int n_modes, double half_width);
    std::size_t size() const { return omega.size(); }
    double total_coupling2() const;
};

struct BathState {
    double time = 0.0;
    Complex c1{};
    Complex c2{};
    std::vector<Complex> modes;

    double norm2() const;
};

/// Crank-Nicolson (Cayley) integration of the (2 + N_m)-dimensional
/// single-excitation Schroedinger equation; exactly norm preserving.
/// Returns one state per entry of `output_times` (must be non-decreasing, >= 0).
std::vector<BathState> discretized_bath_evolve(const PhysicalParams& p, const DiscretizedBath& bath,
                                               const AmplitudeState& init, std::span<const double> output_times,
                                               double dt = 2e-3);

}  // namespace zeno
