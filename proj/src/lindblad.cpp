#include <algorithm>
#include <cmath>

#include "zeno/dynamics.hpp"

namespace zeno {

namespace {

using Mat4 = Eigen::Matrix4cd;

struct Liouvillian {
    Mat4 H_eff;  // H - (i/2) L^dagger L
    double gamma = 0.0;

    Mat4 operator()(const Mat4& rho) const {
        constexpr Complex I{0.0, 1.0};
        Mat4 out = -I * (H_eff * rho - rho * H_eff.adjoint());
        // L rho L^dagger with L = sqrt(gamma) |e4><e3|
        out(3, 3) += gamma * rho(2, 2);
        return out;
    }
};

Liouvillian make_liouvillian(const PhysicalParams& p) {
    constexpr Complex I{0.0, 1.0};
    Liouvillian L;
    L.gamma = 2.0 * p.lambda;
    L.H_eff.setZero();
    L.H_eff(0, 0) = p.delta1;
    L.H_eff(1, 1) = p.delta2;
    L.H_eff(0, 2) = L.H_eff(2, 0) = p.coupling(1);
    L.H_eff(1, 2) = L.H_eff(2, 1) = p.coupling(2);
    L.H_eff(2, 2) = -I * (L.gamma / 2.0);
    return L;
}

}  // namespace

double lindblad_step(const PhysicalParams& p, double t, const LindbladOptions& opts) {
    if (!(opts.step_scale > 0.0)) throw Error(ErrorKind::InvalidParameter, "lindblad step scale must be positive");
    double dt = std::min(1.0 / (50.0 * p.lambda), 1.0 / (50.0 * (p.generalized_rabi() + p.lambda)));
    dt *= opts.step_scale;
    if (t > 0.0) dt = std::min(dt, t / 20.0);
    if (!(dt > 0.0)) throw Error(ErrorKind::InvalidParameter, "lindblad step size is not positive");
    return dt;
}

FullDensity lindblad_evolve(const PhysicalParams& p, const FullDensity& rho, double t, const LindbladOptions& opts) {
    p.validate();
    if (!(t >= 0.0)) throw Error(ErrorKind::InvalidParameter, "evolution time must be >= 0");
    const double dt_max = lindblad_step(p, t, opts);
    if (t == 0.0) return rho;

    const Liouvillian L = make_liouvillian(p);
    const auto steps = static_cast<long>(std::ceil(t / dt_max - 1e-12));
    const double dt = t / static_cast<double>(steps);

    Mat4 r = rho.matrix();
    for (long n = 0; n < steps; ++n) {
        const Mat4 k1 = L(r);
        const Mat4 k2 = L(r + (dt / 2.0) * k1);
        const Mat4 k3 = L(r + (dt / 2.0) * k2);
        const Mat4 k4 = L(r + dt * k3);
        r += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    // RK4 does not preserve hermiticity bit-for-bit
    r = 0.5 * (r + r.adjoint()).eval();
    return FullDensity(r);
}

}  // namespace zeno
