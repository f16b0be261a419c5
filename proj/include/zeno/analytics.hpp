#pragma once

#include "zeno/core.hpp"
#include "zeno/measurement.hpp"

namespace zeno {

/// Diagonal measurement form factor
///   F_jj(w, T) = (1 - e^{i(w_j - w)T} + i(w_j - w)T) / (w_j - w)^2,
/// with a series branch near w = w_j (limit T^2/2).
Complex form_factor_diag(double omega, double omega_j, double T);

/// Cross form factor
///   F_ji = (1 - e^{i(w_j - w)T}) / ((w_j - w)(w_i - w)) - (1 - e^{i(w_j - w_i)T}) / ((w_i - w)(w_j - w_i)),
/// continuous through w = w_i, w = w_j and w_i = w_j.
Complex form_factor_cross(double omega, double omega_j, double omega_i, double T);

/// An overlap integral int J(w) F(w, T) dw evaluated twice: adaptive
/// quadrature over the full line and the closed form available for the
/// Lorentzian (pole) spectrum.
struct OverlapValue {
    Complex quadrature;
    Complex residue;
    double quadrature_error = 0.0;

    double relative_disagreement() const;
};

OverlapValue overlap_diag(const LorentzianSpectrum& J, double omega_j, double T);
OverlapValue overlap_cross(const LorentzianSpectrum& J, double omega_j, double omega_i, double T);

/// Effective decay and phase rates of qubit j under measurements every T.
/// Both include the alpha_j^2 factor.
struct ZenoRates {
    double gamma = 0.0;
    double phase = 0.0;
    double gamma_residue = 0.0;
    double phase_residue = 0.0;
    double quadrature_error = 0.0;
};

/// Throws Numerical when quadrature and residue forms disagree by more than 1e-7 relative.
ZenoRates zeno_rates(const LorentzianSpectrum& J, const PhysicalParams& p, int j, double T);

/// Short-interval amplitude map in the qubit frame,
///   E_jj = exp(-alpha_j^2 int J F_jj),  E_ji = -alpha_j alpha_i int J F_ji.
/// Meaningful for lambda T <~ 1; larger T is accepted.
EvolutionMatrix perturbative_E(const LorentzianSpectrum& J, const PhysicalParams& p, double T);

/// Continuum limit of the transfer sum,
///   (e^{x t} - 1) / x,  x = gamma_j - gamma_i + i(phase_j - phase_i),
/// or t / E_jj when the qubit frequencies coincide.
Complex epsilon_transfer(const ZenoRates& rates_j, const ZenoRates& rates_i, Complex E_jj, double T, double t,
                         bool equal_freq);

struct ApproxModuli {
    double c1_abs = 0.0;
    double c2_abs = 0.0;
    long n_measurements = 0;
    /// t - n_measurements * T; non-zero means t was rounded to the nearest multiple of T.
    double remainder = 0.0;
};

/// |c_j| ~ e^{-gamma_jj t} |c_j0 + (E_ji / T) eps_ji c_i0| at t = N T, N = round(t / T).
ApproxModuli survival_modulus_approx(const PhysicalParams& p, const InitialState& init, double T, double t);

/// 2 [|c10|^2 + 2 |c10||c20| |E12/T| t cos(arg(E12 c20))] e^{-2 gamma11 t}, clamped to [0, 1].
double concurrence_approx_formula(Complex c10, Complex c20, Complex E12, double gamma11, double T, double t);

/// concurrence_approx_formula with rates and E12 from the perturbative layer.
/// Requires r1 == r2 and |delta1| == |delta2| (WrongRegime otherwise).
double concurrence_approx(const PhysicalParams& p, const InitialState& init, double T, double t);

/// Measurement-free (Markov) decay rate pi alpha_j^2 J(delta_j).
double markov_rate(const LorentzianSpectrum& J, const PhysicalParams& p, int j);

}  // namespace zeno
