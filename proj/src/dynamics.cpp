#include "zeno/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace zeno {

namespace {

constexpr Complex I{0.0, 1.0};

}  // namespace

Generator3 Generator3::from(const PhysicalParams& p) {
    const double g1 = p.coupling(1);
    const double g2 = p.coupling(2);
    Generator3 gen;
    gen.M << -I * p.delta1, 0.0, -I * g1,
             0.0, -I * p.delta2, -I * g2,
             -I * g1, -I * g2, -p.lambda;
    return gen;
}

Propagator3 exp_generator(const Eigen::Matrix3cd& M, double t, double degeneracy_gap) {
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(M);
    const auto& mu = es.eigenvalues();
    double gap = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) gap = std::min(gap, std::abs(mu(a) - mu(b)));

    if (es.info() != Eigen::Success || gap < degeneracy_gap) {
        Eigen::Matrix3cd Mt = M * t;
        return {Mt.exp(), ExpmPath::ScalingSquaring};
    }
    const Eigen::Matrix3cd& V = es.eigenvectors();
    Eigen::Vector3cd e;
    for (int a = 0; a < 3; ++a) e(a) = std::exp(mu(a) * t);
    Eigen::Matrix3cd U = V * e.asDiagonal() * V.inverse();
    return {U, ExpmPath::Eigen};
}

Propagator3 free_propagator(const PhysicalParams& p, double t) {
    p.validate();
    if (!(t >= 0.0)) throw Error(ErrorKind::InvalidParameter, "propagation time must be >= 0");
    if (t == 0.0) return {Eigen::Matrix3cd::Identity(), ExpmPath::Eigen};
    return exp_generator(Generator3::from(p).M, t, 1e-8 * p.lambda);
}

AmplitudeState propagate_free(const PhysicalParams& p, const AmplitudeState& a, double t) {
    const Propagator3 prop = free_propagator(p, t);
    Eigen::Vector3cd v = prop.U * Eigen::Vector3cd(a.c1, a.c2, a.b);
    return {v(0), v(1), v(2)};
}

Complex superradiant_survival(const PhysicalParams& p, double T) {
    p.validate();
    if (p.delta1 != p.delta2)
        throw Error(ErrorKind::WrongRegime, "superradiant survival requires delta1 == delta2");
    const double lambda = p.lambda;
    const double delta = p.delta1;
    const double rabi2 = 4.0 * p.rabi_vacuum * p.rabi_vacuum + delta * delta;
    const Complex a = lambda - I * delta;
    const Complex omega = std::sqrt(Complex(lambda * lambda - rabi2, -2.0 * delta * lambda));
    const Complex y = omega * T / 2.0;
    // sinh(y)/y, series near the double root
    Complex sinhc;
    if (std::abs(y) < 1e-3) {
        const Complex y2 = y * y;
        sinhc = 1.0 + y2 / 6.0 + y2 * y2 / 120.0;
    } else {
        sinhc = std::sinh(y) / y;
    }
    return std::exp(-a * T / 2.0) * (std::cosh(y) + a * (T / 2.0) * sinhc);
}

Complex superradiant_element(const PhysicalParams& p, double T) {
    const Propagator3 prop = free_propagator(p, T);
    const Eigen::Vector3cd s(p.r1, p.r2(), 0.0);
    return s.dot(prop.U * s);
}

}  // namespace zeno
