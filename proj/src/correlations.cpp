#include "zeno/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zeno {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Entropy of a 2x2 density block [[a, b], [conj(b), d]] with trace a + d.
double entropy2(double a, double d, Complex b) {
    const double tr = a + d;
    if (tr <= 0.0) return 0.0;
    const double half = tr / 2.0;
    const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
    const double l1 = std::clamp((half + disc) / tr, 0.0, 1.0);
    const double l2 = std::clamp((half - disc) / tr, 0.0, 1.0);
    return -xlog2x(l1) - xlog2x(l2);
}

double two_qubit_entropy(const XStateDensity& x) {
    const double half = 0.5 * (x.p10 + x.p01);
    const double disc = std::sqrt(0.25 * (x.p10 - x.p01) * (x.p10 - x.p01) + std::norm(x.z));
    double s = 0.0;
    for (double ev : {x.p00, half + disc, half - disc}) s -= xlog2x(std::clamp(ev, 0.0, 1.0));
    return s;
}

}  // namespace

double binary_entropy(double p) {
    p = std::clamp(p, 0.0, 1.0);
    return -xlog2x(p) - xlog2x(1.0 - p);
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
    if (rho.rows() != rho.cols()) throw Error(ErrorKind::InvalidParameter, "density matrix must be square");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw Error(ErrorKind::InvalidParameter, "density matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        double ev = es.eigenvalues()(k);
        if (ev < 1e-12) continue;
        s -= xlog2x(std::min(ev, 1.0));
    }
    return s;
}

double concurrence(const XStateDensity& x) { return std::clamp(2.0 * std::abs(x.z), 0.0, 1.0); }

double mutual_information(const XStateDensity& x) {
    return binary_entropy(x.p10) + binary_entropy(x.p01) - two_qubit_entropy(x);
}

double classical_closed(double p10, double p01) {
    const double ground = 1.0 - p10 - p01;
    return xlog2x(std::max(0.0, ground)) - xlog2x(1.0 - p10) - xlog2x(1.0 - p01);
}

double discord_closed(double p10, double p01) {
    double d = 0.0;
    if (p10 > 0.0) d += p10 * std::log2(1.0 + p01 / p10);
    if (p01 > 0.0) d += p01 * std::log2(1.0 + p10 / p01);
    return d;
}

double classical_measurement_value(const XStateDensity& x, double theta, double phi) {
    // rho in basis |q1 q2> = 00, 01, 10, 11; only 00, 01, 10 are populated.
    const Eigen::Matrix4cd rho = x.dense();
    const Complex ph = std::polar(1.0, phi);
    const Eigen::Vector2cd a(std::cos(theta), ph * std::sin(theta));
    const Eigen::Vector2cd b(std::sin(theta), -ph * std::cos(theta));

    double cond = 0.0;
    for (const auto& v : {a, b}) {
        // qubit-1 block: m(q1, q1') = sum_{q2, q2'} conj(v_q2) rho(q1 q2, q1' q2') v_q2'
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
        for (int q1 = 0; q1 < 2; ++q1)
            for (int r1 = 0; r1 < 2; ++r1)
                for (int q2 = 0; q2 < 2; ++q2)
                    for (int r2 = 0; r2 < 2; ++r2)
                        m(q1, r1) += std::conj(v(q2)) * rho(2 * q1 + q2, 2 * r1 + r2) * v(r2);
        const double pk = m.trace().real();
        if (pk > 1e-15) cond += pk * entropy2(m(0, 0).real(), m(1, 1).real(), m(0, 1));
    }
    return binary_entropy(x.p10) - cond;
}

ClassicalOptimum classical_optimized(const XStateDensity& x, int grid) {
    grid = std::max(grid, 64);
    constexpr double half_pi = std::numbers::pi / 2.0;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double dth = half_pi / (grid - 1);
    const double dph = two_pi / grid;

    ClassicalOptimum best{-std::numeric_limits<double>::infinity(), 0.0, 0.0};
    for (int a = 0; a < grid; ++a) {
        for (int b = 0; b < grid; ++b) {
            const double th = a * dth;
            const double ph = b * dph;
            const double v = classical_measurement_value(x, th, ph);
            if (v > best.value) best = {v, th, ph};
        }
    }

    auto golden_max = [](auto f, double lo, double hi) {
        const double g = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
        double fc = f(c), fd = f(d);
        while (hi - lo > 1e-8) {
            if (fc >= fd) {
                hi = d; d = c; fd = fc;
                c = hi - g * (hi - lo); fc = f(c);
            } else {
                lo = c; c = d; fc = fd;
                d = lo + g * (hi - lo); fd = f(d);
            }
        }
        return 0.5 * (lo + hi);
    };

    const double th_lo = std::max(0.0, best.theta - dth);
    const double th_hi = std::min(half_pi, best.theta + dth);
    const double th = golden_max([&](double t) { return classical_measurement_value(x, t, best.phi); }, th_lo, th_hi);
    const double ph = golden_max([&](double q) { return classical_measurement_value(x, th, q); }, best.phi - dph,
                                 best.phi + dph);
    const double refined = classical_measurement_value(x, th, ph);
    if (refined > best.value) {
        best.value = refined;
        best.theta = th;
        best.phi = std::fmod(ph + two_pi, two_pi);
    }
    return best;
}

double discord(const XStateDensity& x) { return mutual_information(x) - classical_closed(x.p10, x.p01); }

CorrelationRecord correlation_record(const XStateDensity& x) {
    CorrelationRecord r;
    r.concurrence = concurrence(x);
    r.mutual_info = mutual_information(x);
    r.classical = classical_closed(x.p10, x.p01);
    r.discord = r.mutual_info - r.classical;
    return r;
}

}  // namespace zeno
