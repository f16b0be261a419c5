#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace zeno {

using Complex = std::complex<double>;

enum class ErrorKind {
    InvalidParameter,
    InconsistentState,
    WrongRegime,
    Numerical,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parameters of two qubits coupled to a Lorentzian-broadened cavity mode.
///
/// All rates are in the same (arbitrary) inverse-time unit; the CLI fixes
/// lambda = 1. The second relative coupling is not stored: r2 = sqrt(1 - r1^2).
struct PhysicalParams {
    double lambda = 1.0;       ///< reservoir half-width
    double rabi_vacuum = 0.1;  ///< vacuum Rabi frequency W * alpha_T
    double r1 = 0.70710678118654752;
    double delta1 = 0.0;  ///< omega_1 - omega_c
    double delta2 = 0.0;  ///< omega_2 - omega_c

    double r2() const;
    /// Coupling of qubit j (1 or 2) to the cavity mode, r_j * rabi_vacuum.
    double coupling(int j) const;
    double detuning(int j) const;
    bool equal_detunings() const { return delta1 == delta2; }
    /// sqrt(4 R^2 + delta^2) using the larger detuning magnitude.
    double generalized_rabi() const;

    /// Throws InvalidParameter when an invariant is violated.
    void validate() const;
};

/// Build parameters from the dimensionless figure quantities (R = rabi/lambda).
PhysicalParams make_params(double R, double r1, double delta1, double delta2, double lambda = 1.0);

/// Initial single-excitation qubit state sqrt((1-s)/2)|10> + sqrt((1+s)/2) e^{i phi}|01>.
struct InitialState {
    double s = 0.0;
    double phi = 0.0;

    void validate() const;
    /// phi reduced to [0, 2 pi).
    double reduced_phi() const;
    Complex c01() const;
    Complex c02() const;
};

/// Single-excitation pure branch: qubit amplitudes and the pseudomode amplitude.
struct AmplitudeState {
    Complex c1{};
    Complex c2{};
    Complex b{};

    double norm2() const { return std::norm(c1) + std::norm(c2) + std::norm(b); }
    /// Population irreversibly lost to the reservoir, 1 - norm2().
    double lost_population() const { return 1.0 - norm2(); }
};

/// Reduced two-qubit state with only |00>, |01>, |10> populated.
struct XStateDensity {
    double p00 = 1.0;
    double p01 = 0.0;
    double p10 = 0.0;
    Complex z{};  ///< <10|rho|01>

    /// True when the excited block is rank one, |z|^2 == p10 * p01 within tol.
    bool is_pure_branch(double tol = 1e-9) const;
    /// Throws InconsistentState when an invariant is violated.
    void validate(double tol = 1e-9) const;
    /// Dense 4x4 matrix in the basis |00>, |01>, |10>, |11> (qubit 1 is the left factor).
    Eigen::Matrix4cd dense() const;
};

/// 4x4 density matrix over e1=|10;0>, e2=|01;0>, e3=|00;1_pm>, e4=|00;0>.
class FullDensity {
public:
    FullDensity() : rho_(Eigen::Matrix4cd::Zero()) { rho_(3, 3) = 1.0; }
    explicit FullDensity(const Eigen::Matrix4cd& rho) : rho_(rho) {}

    /// Pure-state embedding of an amplitude state; lost population goes to e4.
    static FullDensity from_amplitudes(const AmplitudeState& a);

    const Eigen::Matrix4cd& matrix() const { return rho_; }
    Complex operator()(int i, int j) const { return rho_(i, j); }
    double trace() const { return rho_.trace().real(); }

    /// Throws InconsistentState when trace, hermiticity or positivity fail.
    void validate(double tol = 1e-9) const;
    XStateDensity reduce() const;

private:
    Eigen::Matrix4cd rho_;
};

/// Lorentzian spectral density J(w) = (W^2/pi) lambda / ((w - w_c)^2 + lambda^2), w_c = 0.
struct LorentzianSpectrum {
    double lambda = 1.0;
    double W = 0.1;

    double operator()(double omega) const;
    /// f(t) = W^2 exp(-lambda |t|)
    double correlation(double t) const;
};

/// Spectrum for params with alpha_T = 1, so alpha_j = r_j and W = rabi_vacuum.
LorentzianSpectrum make_spectrum(const PhysicalParams& p);

AmplitudeState build_initial(const InitialState& init);
XStateDensity reduce_to_xstate(const AmplitudeState& a, double tol = 1e-9);

}  // namespace zeno
