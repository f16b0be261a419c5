#include <algorithm>
#include <cmath>

#include "zeno/dynamics.hpp"

namespace zeno {

DiscretizedBath DiscretizedBath::make(const LorentzianSpectrum& J, int n_modes, double half_width) {
    if (n_modes < 100) throw Error(ErrorKind::InvalidParameter, "discretized bath needs at least 100 modes");
    if (!(half_width >= 10.0 * J.lambda))
        throw Error(ErrorKind::InvalidParameter, "discretized bath window must be at least 10 lambda");
    DiscretizedBath bath;
    bath.half_width = half_width;
    bath.d_omega = 2.0 * half_width / n_modes;
    bath.omega.resize(n_modes);
    bath.g.resize(n_modes);
    for (int k = 0; k < n_modes; ++k) {
        const double w = -half_width + (k + 0.5) * bath.d_omega;
        bath.omega[k] = w;
        bath.g[k] = std::sqrt(J(w) * bath.d_omega);
    }
    return bath;
}

double DiscretizedBath::total_coupling2() const {
    double s = 0.0;
    for (double gk : g) s += gk * gk;
    return s;
}

double BathState::norm2() const {
    double s = std::norm(c1) + std::norm(c2);
    for (const auto& m : modes) s += std::norm(m);
    return s;
}

namespace {

// One Cayley step (1 + i h H) x = (1 - i h H) psi for the arrowhead H, solved
// through the 2x2 Schur complement on the qubit block.
// The bath couplings carry W = rabi_vacuum (see make_spectrum), so the qubit
// factors are the relative couplings r_j.
class CayleyStepper {
public:
    CayleyStepper(const PhysicalParams& p, const DiscretizedBath& bath, double dt)
        : bath_(bath), h_(dt / 2.0), alpha_{p.r1, p.r2()}, delta_{p.delta1, p.delta2} {
        constexpr Complex I{0.0, 1.0};
        inv_d_.resize(bath.size());
        Complex G = 0.0;
        for (std::size_t k = 0; k < bath.size(); ++k) {
            inv_d_[k] = 1.0 / (1.0 + I * h_ * bath.omega[k]);
            G += bath.g[k] * bath.g[k] * inv_d_[k];
        }
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l)
                B_(j, l) = (j == l ? 1.0 + I * h_ * delta_[j] : Complex{}) + h_ * h_ * G * alpha_[j] * alpha_[l];
        lu_ = B_.partialPivLu();
    }

    void step(BathState& s, std::vector<Complex>& scratch) const {
        constexpr Complex I{0.0, 1.0};
        const std::size_t n = bath_.size();
        // rhs = (1 - i h H) psi
        Complex sum_gm = 0.0;
        for (std::size_t k = 0; k < n; ++k) sum_gm += bath_.g[k] * s.modes[k];
        const Complex u0 = alpha_[0] * s.c1 + alpha_[1] * s.c2;
        const Complex r1 = s.c1 - I * h_ * (delta_[0] * s.c1 + alpha_[0] * sum_gm);
        const Complex r2 = s.c2 - I * h_ * (delta_[1] * s.c2 + alpha_[1] * sum_gm);
        scratch.resize(n);
        Complex q = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            scratch[k] = s.modes[k] - I * h_ * (bath_.omega[k] * s.modes[k] + bath_.g[k] * u0);
            q += bath_.g[k] * scratch[k] * inv_d_[k];
        }
        Eigen::Vector2cd rhs(r1 - I * h_ * alpha_[0] * q, r2 - I * h_ * alpha_[1] * q);
        const Eigen::Vector2cd x = lu_.solve(rhs);
        const Complex u = alpha_[0] * x(0) + alpha_[1] * x(1);
        s.c1 = x(0);
        s.c2 = x(1);
        for (std::size_t k = 0; k < n; ++k) s.modes[k] = (scratch[k] - I * h_ * bath_.g[k] * u) * inv_d_[k];
    }

private:
    const DiscretizedBath& bath_;
    double h_;
    double alpha_[2];
    double delta_[2];
    std::vector<Complex> inv_d_;
    Eigen::Matrix2cd B_;
    Eigen::PartialPivLU<Eigen::Matrix2cd> lu_;
};

}  // namespace

std::vector<BathState> discretized_bath_evolve(const PhysicalParams& p, const DiscretizedBath& bath,
                                               const AmplitudeState& init, std::span<const double> output_times,
                                               double dt) {
    p.validate();
    if (bath.size() < 100) throw Error(ErrorKind::InvalidParameter, "discretized bath needs at least 100 modes");
    if (!(dt > 0.0)) throw Error(ErrorKind::InvalidParameter, "bath integrator step must be positive");
    if (std::abs(init.b) != 0.0)
        throw Error(ErrorKind::InvalidParameter, "discretized bath starts from the reservoir vacuum (b = 0)");
    if (!std::is_sorted(output_times.begin(), output_times.end()) ||
        (!output_times.empty() && output_times.front() < 0.0))
        throw Error(ErrorKind::InvalidParameter, "output times must be non-negative and non-decreasing");

    BathState s;
    s.c1 = init.c1;
    s.c2 = init.c2;
    s.modes.assign(bath.size(), Complex{});
    std::vector<Complex> scratch;
    std::vector<BathState> out;
    out.reserve(output_times.size());

    double t = 0.0;
    for (double target : output_times) {
        const double seg = target - t;
        if (seg > 0.0) {
            const auto n = static_cast<long>(std::ceil(seg / dt - 1e-9));
            const CayleyStepper stepper(p, bath, seg / static_cast<double>(n));
            for (long k = 0; k < n; ++k) stepper.step(s, scratch);
            t = target;
        }
        s.time = target;
        out.push_back(s);
    }
    return out;
}

}  // namespace zeno
