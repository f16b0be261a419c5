#include "zeno/measurement.hpp"

#include <cmath>
#include <string>

namespace zeno {

namespace {

// Neumaier-compensated complex accumulator.
class CompensatedSum {
public:
    void add(Complex x) {
        re_.add(x.real());
        im_.add(x.imag());
    }
    Complex value() const { return {re_.value(), im_.value()}; }

private:
    struct Real {
        double sum = 0.0;
        double comp = 0.0;
        void add(double x) {
            const double t = sum + x;
            comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
            sum = t;
        }
        double value() const { return sum + comp; }
    };
    Real re_;
    Real im_;
};

bool theta(long x) { return x > 0; }

// z^n by repeated squaring (exact for n = 0, 1)
Complex ipow(Complex z, long n) {
    Complex r = 1.0;
    for (; n > 0; n >>= 1) {
        if (n & 1) r *= z;
        z *= z;
    }
    return r;
}

bool degenerate(Complex eii, Complex ejj) { return std::abs(eii - ejj) <= 1e-12 * std::abs(ejj); }

// sum_{k=0}^{K} w(k) e_ii^k e_jj^{m-k}, with the analytic e_ii == e_jj branch
template <class Weight>
Complex weighted_geometric(Complex eii, Complex ejj, long K, long m, Weight w) {
    if (K < 0) return 0.0;
    if (degenerate(eii, ejj)) {
        double count = 0.0;
        for (long k = 0; k <= K; ++k) count += w(k);
        return count * ipow(ejj, m);
    }
    CompensatedSum acc;
    Complex pi = 1.0;
    for (long k = 0; k <= K; ++k) {
        acc.add(w(k) * pi * ipow(ejj, m - k));
        pi *= eii;
    }
    return acc.value();
}

}  // namespace

double EvolutionMatrix::spectral_radius() const {
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(m, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

void MeasurementSchedule::validate() const {
    if (!(T > 0.0) || !std::isfinite(T)) throw Error(ErrorKind::InvalidParameter, "measurement interval T must be > 0");
    if (N < 0) throw Error(ErrorKind::InvalidParameter, "number of measurements must be >= 0");
}

FullDensity nonselective_measure(const FullDensity& rho) {
    Eigen::Matrix4cd r = rho.matrix();
    r.block<2, 2>(0, 2).setZero();
    r.block<2, 2>(2, 0).setZero();
    return FullDensity(r);
}

std::vector<FullDensity> measured_trajectory_exact(const PhysicalParams& p, const InitialState& init,
                                                   const MeasurementSchedule& sched, const LindbladOptions& opts) {
    p.validate();
    sched.validate();
    std::vector<FullDensity> out;
    out.reserve(static_cast<std::size_t>(sched.N) + 1);
    out.push_back(FullDensity::from_amplitudes(build_initial(init)));
    for (long k = 0; k < sched.N; ++k) out.push_back(nonselective_measure(lindblad_evolve(p, out.back(), sched.T, opts)));
    return out;
}

std::vector<XStateDensity> measured_evolution_exact(const PhysicalParams& p, const InitialState& init,
                                                    const MeasurementSchedule& sched, const LindbladOptions& opts) {
    const auto traj = measured_trajectory_exact(p, init, sched, opts);
    std::vector<XStateDensity> out;
    out.reserve(traj.size());
    for (const auto& rho : traj) out.push_back(rho.reduce());
    return out;
}

EvolutionMatrix evolution_matrix(const PhysicalParams& p, double T) {
    if (!(T > 0.0)) throw Error(ErrorKind::InvalidParameter, "evolution interval T must be > 0");
    return {free_propagator(p, T).U.block<2, 2>(0, 0)};
}

EvolutionMatrix to_qubit_frame(const EvolutionMatrix& E, const PhysicalParams& p, double T) {
    constexpr Complex I{0.0, 1.0};
    EvolutionMatrix q = E;
    q.m.row(0) *= std::exp(I * p.delta1 * T);
    q.m.row(1) *= std::exp(I * p.delta2 * T);
    return q;
}

EvolutionMatrix coarse_grained_series(const EvolutionMatrix& E, long N) {
    if (N < 1) throw Error(ErrorKind::InvalidParameter, "coarse-grained series needs N >= 1");
    EvolutionMatrix out;
    for (int j = 0; j < 2; ++j) {
        const int i = 1 - j;
        const Complex ejj = E.m(j, j);
        const Complex eii = E.m(i, i);
        const Complex eji = E.m(j, i);
        const Complex eij = E.m(i, j);

        // E_jj^N [1 + th[N-1] (E_ji E_ij / E_jj^2) sum_{k=0}^{N-2} (N-1-k) (E_ii/E_jj)^k]
        Complex diag = ipow(ejj, N);
        if (theta(N - 1))
            diag += eji * eij *
                    weighted_geometric(eii, ejj, N - 2, N - 2, [N](long k) { return double(N - 1 - k); });

        // E_jj^N [(E_ji/E_jj) sum_{k=0}^{N-1} r^k + th[N-2] (E_ji^2 E_ij/E_jj^3) sum_{k=0}^{N-3} (k+1)(N-k) r^k]
        Complex cross = eji * weighted_geometric(eii, ejj, N - 1, N - 1, [](long) { return 1.0; });
        if (theta(N - 2))
            cross += eji * eji * eij *
                     weighted_geometric(eii, ejj, N - 3, N - 3, [N](long k) { return double((k + 1) * (N - k)); });

        out.m(j, j) = diag;
        out.m(j, i) = cross;
    }
    return out;
}

EvolutionMatrix coarse_grained_badcavity(const EvolutionMatrix& E, long N) {
    if (N < 1) throw Error(ErrorKind::InvalidParameter, "bad-cavity truncation needs N >= 1");
    EvolutionMatrix out;
    for (int j = 0; j < 2; ++j) {
        const int i = 1 - j;
        out.m(j, j) = ipow(E.m(j, j), N);
        out.m(j, i) = E.m(j, i) * weighted_geometric(E.m(i, i), E.m(j, j), N - 1, N - 1, [](long) { return 1.0; });
    }
    return out;
}

EvolutionMatrix matrix_power(const EvolutionMatrix& E, long N) {
    if (N < 0) throw Error(ErrorKind::InvalidParameter, "matrix power needs N >= 0");
    Eigen::Matrix2cd result = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd base = E.m;
    for (long n = N; n > 0; n >>= 1) {
        if (n & 1) result = result * base;
        base = base * base;
    }
    return {result};
}

SurvivalMethod parse_survival_method(std::string_view label) {
    if (label == "exact") return SurvivalMethod::Exact;
    if (label == "series") return SurvivalMethod::Series;
    if (label == "badcavity") return SurvivalMethod::BadCavity;
    if (label == "power") return SurvivalMethod::Power;
    throw Error(ErrorKind::InvalidParameter, "unknown survival method '" + std::string(label) + "'");
}

std::string_view to_string(SurvivalMethod m) {
    switch (m) {
        case SurvivalMethod::Exact: return "exact";
        case SurvivalMethod::Series: return "series";
        case SurvivalMethod::BadCavity: return "badcavity";
        case SurvivalMethod::Power: return "power";
    }
    return "exact";
}

SurvivalResult survival_amplitudes_N(const PhysicalParams& p, const InitialState& init,
                                     const MeasurementSchedule& sched, SurvivalMethod method) {
    p.validate();
    sched.validate();
    SurvivalResult res;
    res.method = method;
    if (method == SurvivalMethod::Exact) {
        res.state = measured_evolution_exact(p, init, sched).back();
        return res;
    }
    const AmplitudeState a0 = build_initial(init);
    Eigen::Vector2cd c(a0.c1, a0.c2);
    if (sched.N > 0) {
        const EvolutionMatrix E = evolution_matrix(p, sched.T);
        EvolutionMatrix EN;
        switch (method) {
            case SurvivalMethod::Series: EN = coarse_grained_series(E, sched.N); break;
            case SurvivalMethod::BadCavity: EN = coarse_grained_badcavity(E, sched.N); break;
            default: EN = matrix_power(E, sched.N); break;
        }
        c = EN.m * c;
    }
    res.amplitudes = std::array<Complex, 2>{c(0), c(1)};
    // the coarse-grained series can overshoot the norm outside its validity range
    res.state = reduce_to_xstate({c(0), c(1), 0.0}, 1e-6);
    return res;
}

}  // namespace zeno
