#include "zeno/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace zeno {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidParameter, msg); }
[[noreturn]] void inconsistent(const std::string& msg) { throw Error(ErrorKind::InconsistentState, msg); }

}  // namespace

double PhysicalParams::r2() const { return std::sqrt(std::max(0.0, 1.0 - r1 * r1)); }

double PhysicalParams::coupling(int j) const { return (j == 1 ? r1 : r2()) * rabi_vacuum; }

double PhysicalParams::detuning(int j) const { return j == 1 ? delta1 : delta2; }

double PhysicalParams::generalized_rabi() const {
    const double d = std::max(std::abs(delta1), std::abs(delta2));
    return std::sqrt(4.0 * rabi_vacuum * rabi_vacuum + d * d);
}

void PhysicalParams::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) invalid("lambda must be positive and finite");
    if (!(rabi_vacuum >= 0.0) || !std::isfinite(rabi_vacuum)) invalid("rabi_vacuum must be >= 0");
    if (!(r1 >= 0.0 && r1 <= 1.0)) invalid("r1 must lie in [0, 1]");
    if (!std::isfinite(delta1) || !std::isfinite(delta2)) invalid("detunings must be finite");
}

PhysicalParams make_params(double R, double r1, double delta1, double delta2, double lambda) {
    PhysicalParams p;
    p.lambda = lambda;
    p.rabi_vacuum = R * lambda;
    p.r1 = r1;
    p.delta1 = delta1;
    p.delta2 = delta2;
    p.validate();
    return p;
}

void InitialState::validate() const {
    if (!(s >= -1.0 && s <= 1.0)) {
        std::ostringstream os;
        os << "asymmetry s = " << s << " outside [-1, 1]";
        invalid(os.str());
    }
    if (!std::isfinite(phi)) invalid("phase phi must be finite");
}

double InitialState::reduced_phi() const {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(phi, two_pi);
    if (r < 0.0) r += two_pi;
    return r >= two_pi ? 0.0 : r;
}

Complex InitialState::c01() const { return {std::sqrt((1.0 - s) / 2.0), 0.0}; }

Complex InitialState::c02() const { return std::sqrt((1.0 + s) / 2.0) * std::polar(1.0, reduced_phi()); }

bool XStateDensity::is_pure_branch(double tol) const { return std::abs(std::norm(z) - p10 * p01) <= tol; }

void XStateDensity::validate(double tol) const {
    const double sum = p00 + p01 + p10;
    if (std::abs(sum - 1.0) > tol) {
        std::ostringstream os;
        os << "populations sum to " << sum;
        inconsistent(os.str());
    }
    if (p00 < -1e-12 || p01 < -1e-12 || p10 < -1e-12) inconsistent("negative population");
    if (std::norm(z) > p10 * p01 + 1e-12) inconsistent("coherence exceeds sqrt(p10 p01)");
}

Eigen::Matrix4cd XStateDensity::dense() const {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = p00;
    m(1, 1) = p01;
    m(2, 2) = p10;
    m(2, 1) = z;
    m(1, 2) = std::conj(z);
    return m;
}

FullDensity FullDensity::from_amplitudes(const AmplitudeState& a) {
    Eigen::Vector4cd v(a.c1, a.c2, a.b, 0.0);
    Eigen::Matrix4cd m = v * v.adjoint();
    m(3, 3) = std::max(0.0, a.lost_population());
    return FullDensity(m);
}

void FullDensity::validate(double tol) const {
    if (std::abs(trace() - 1.0) > tol) {
        std::ostringstream os;
        os << "density trace " << trace() << " differs from 1";
        inconsistent(os.str());
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol) inconsistent("density is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) inconsistent("density is not positive semidefinite");
}

XStateDensity FullDensity::reduce() const {
    XStateDensity x;
    x.p10 = rho_(0, 0).real();
    x.p01 = rho_(1, 1).real();
    x.z = rho_(0, 1);
    x.p00 = rho_(2, 2).real() + rho_(3, 3).real();
    return x;
}

double LorentzianSpectrum::operator()(double omega) const {
    return W * W / std::numbers::pi * lambda / (omega * omega + lambda * lambda);
}

double LorentzianSpectrum::correlation(double t) const { return W * W * std::exp(-lambda * std::abs(t)); }

LorentzianSpectrum make_spectrum(const PhysicalParams& p) { return {p.lambda, p.rabi_vacuum}; }

AmplitudeState build_initial(const InitialState& init) {
    init.validate();
    return {init.c01(), init.c02(), Complex{}};
}

XStateDensity reduce_to_xstate(const AmplitudeState& a, double tol) {
    const double n = a.norm2();
    if (n > 1.0 + tol) {
        std::ostringstream os;
        os << "amplitude norm " << n << " exceeds 1";
        inconsistent(os.str());
    }
    XStateDensity x;
    x.p10 = std::norm(a.c1);
    x.p01 = std::norm(a.c2);
    x.z = a.c1 * std::conj(a.c2);
    x.p00 = 1.0 - x.p10 - x.p01;
    return x;
}

}  // namespace zeno
