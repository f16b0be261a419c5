#include <cmath>
#include <sstream>

#include "zeno/dynamics.hpp"

namespace zeno {

// Qubit-frame equations
//   dc_j/dt = -sum_i alpha_j alpha_i e^{i(delta_j - delta_i)t} int_0^t K_i(t') c_i(t - t') dt'
// with K_i(t') = W^2 e^{-lambda t'} e^{i delta_i t'}. The memory integral uses the
// trapezoidal rule on the full history (no use of the exponential structure of K),
// and the outer ODE is stepped with the implicit trapezoidal rule.
VolterraTrajectory volterra_integrate(const PhysicalParams& p, const AmplitudeState& init, double t_max, double dt) {
    p.validate();
    if (!(dt > 0.0) || dt > 1.0 / (100.0 * p.lambda) * (1.0 + 1e-12))
        throw Error(ErrorKind::InvalidParameter, "volterra step must satisfy 0 < dt <= 1/(100 lambda)");
    if (!(t_max >= 0.0)) throw Error(ErrorKind::InvalidParameter, "t_max must be >= 0");
    if (std::abs(init.b) != 0.0)
        throw Error(ErrorKind::InvalidParameter, "volterra solver needs the reservoir initially empty (b = 0)");

    constexpr Complex I{0.0, 1.0};
    const auto n_steps = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
    const double alpha[2] = {p.coupling(1), p.coupling(2)};  // alpha_j W
    const double delta[2] = {p.delta1, p.delta2};

    // kernel[i][m] = e^{-(lambda - i delta_i) m dt}; the W^2 factor sits in alpha
    std::vector<Complex> kernel[2];
    for (int i = 0; i < 2; ++i) {
        kernel[i].resize(n_steps + 1);
        const Complex rate = -(p.lambda - I * delta[i]) * dt;
        for (std::size_t m = 0; m <= n_steps; ++m) kernel[i][m] = std::exp(rate * static_cast<double>(m));
    }

    std::vector<Complex> c[2];
    c[0].reserve(n_steps + 1);
    c[1].reserve(n_steps + 1);
    c[0].push_back(init.c1);
    c[1].push_back(init.c2);

    // F_j(n) = -alpha_j sum_i alpha_i e^{i(delta_j - delta_i) t_n} I_i(n)
    auto phase = [&](int j, int i, double t) { return std::exp(I * (delta[j] - delta[i]) * t); };
    Complex F_prev[2] = {0.0, 0.0};  // memory integral vanishes at t = 0

    const double norm0 = std::norm(init.c1) + std::norm(init.c2);
    VolterraTrajectory traj;
    traj.times.reserve(n_steps + 1);
    traj.states.reserve(n_steps + 1);
    traj.times.push_back(0.0);
    traj.states.push_back({init.c1, init.c2, 0.0});

    for (std::size_t n = 0; n < n_steps; ++n) {
        const std::size_t np1 = n + 1;
        const double t1 = static_cast<double>(np1) * dt;
        // Known part of the memory integral at t_{n+1}: endpoints 0 (half weight) and 1..n
        Complex known[2];
        for (int i = 0; i < 2; ++i) {
            Complex acc = 0.5 * kernel[i][np1] * c[i][0];
            for (std::size_t m = 1; m <= n; ++m) acc += kernel[i][np1 - m] * c[i][m];
            known[i] = dt * acc;
        }
        // A x = rhs, A_ji = delta_ji + (dt^2/4) alpha_j alpha_i phase_ji
        Eigen::Matrix2cd A;
        Eigen::Vector2cd rhs;
        for (int j = 0; j < 2; ++j) {
            Complex fk = 0.0;
            for (int i = 0; i < 2; ++i) {
                const Complex ph = phase(j, i, t1);
                A(j, i) = (j == i ? 1.0 : 0.0) + 0.25 * dt * dt * alpha[j] * alpha[i] * ph;
                fk += alpha[i] * ph * known[i];
            }
            rhs(j) = c[j][n] + 0.5 * dt * (F_prev[j] - alpha[j] * fk);
        }
        const Eigen::Vector2cd x = A.partialPivLu().solve(rhs);
        c[0].push_back(x(0));
        c[1].push_back(x(1));

        for (int j = 0; j < 2; ++j) {
            Complex acc = 0.0;
            for (int i = 0; i < 2; ++i) acc += alpha[i] * phase(j, i, t1) * (known[i] + 0.5 * dt * x(i));
            F_prev[j] = -alpha[j] * acc;
        }

        const double norm = std::norm(x(0)) + std::norm(x(1));
        if (!std::isfinite(norm) || norm > norm0 + 1e-3) {
            std::ostringstream os;
            os << "volterra integration unstable at t = " << t1 << ": qubit norm " << norm << " exceeds initial "
               << norm0;
            throw Error(ErrorKind::Numerical, os.str());
        }
        const Complex c1 = x(0) * std::exp(-I * delta[0] * t1);
        const Complex c2 = x(1) * std::exp(-I * delta[1] * t1);
        traj.times.push_back(t1);
        traj.states.push_back({c1, c2, std::sqrt(std::max(0.0, norm0 - norm))});
    }
    return traj;
}

}  // namespace zeno
