#include <doctest.h>

#include "test_support.hpp"
#include "zeno/correlations.hpp"
#include "zeno/measurement.hpp"

using namespace zeno;
using zeno::testing::kInvSqrt2;

namespace {

constexpr Complex I{0.0, 1.0};

EvolutionMatrix scaled_offdiag(double eps) {
    EvolutionMatrix E;
    E.m << Complex(0.93, -0.2), eps * Complex(0.7, 0.3), eps * Complex(-0.4, 0.6), Complex(0.88, 0.25);
    return E;
}

}  // namespace

TEST_CASE("nonselective measurement") {
    zeno::testing::Gen gen(31);
    Eigen::Matrix4cd block = Eigen::Matrix4cd::Zero();
    block.topLeftCorner<2, 2>() << 0.6, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.4;
    CHECK((nonselective_measure(FullDensity(block)).matrix() - block).norm() == 0.0);

    for (int k = 0; k < 100; ++k) {
        const FullDensity rho(gen.density4());
        const FullDensity once = nonselective_measure(rho);
        CHECK((nonselective_measure(once).matrix() - once.matrix()).norm() == 0.0);
        CHECK(std::abs(once.trace() - rho.trace()) < 1e-14);
        CHECK(once.matrix().topRightCorner<2, 2>().norm() == 0.0);
        CHECK(once.matrix().bottomLeftCorner<2, 2>().norm() == 0.0);
    }
}

TEST_CASE("exact channel with no measurements returns the initial state") {
    const PhysicalParams p = make_params(0.1, kInvSqrt2, 2.0, 2.0);
    const auto xs = measured_evolution_exact(p, {0.3, 1.0}, {0.5, 0});
    REQUIRE(xs.size() == 1);
    const XStateDensity x0 = reduce_to_xstate(build_initial({0.3, 1.0}));
    CHECK(xs[0].p10 == doctest::Approx(x0.p10));
    CHECK(std::abs(xs[0].z - x0.z) < 1e-15);
}

TEST_CASE("subradiant state stays maximally entangled under measurements") {
    const PhysicalParams p = make_params(0.1, kInvSqrt2, 2.0, 2.0);
    for (const auto& x : measured_evolution_exact(p, {0.0, std::numbers::pi}, {0.3, 20}))
        CHECK(std::abs(concurrence(x) - 1.0) < 1e-6);
}

TEST_CASE("frequent measurements on resonance protect entanglement") {
    const PhysicalParams p = make_params(0.1, kInvSqrt2, 0.0, 0.0);
    const InitialState init{0.0, 0.0};
    const auto xs = measured_evolution_exact(p, init, {0.05, 40});
    const XStateDensity free = reduce_to_xstate(propagate_free(p, build_initial(init), 2.0));
    CHECK(concurrence(xs.back()) > concurrence(free));
}

TEST_CASE("interval map limits") {
    const PhysicalParams p0 = make_params(0.0, kInvSqrt2, 1.0, -2.0);
    const EvolutionMatrix E0 = evolution_matrix(p0, 0.7);
    CHECK(std::abs(E0(1, 1) - std::exp(-I * 0.7)) < 1e-14);
    CHECK(std::abs(E0(2, 2) - std::exp(I * 1.4)) < 1e-14);
    CHECK(std::abs(E0(1, 2)) < 1e-14);

    const PhysicalParams p = make_params(0.4, kInvSqrt2, 1.5, 1.5);
    const double T = 1.3;
    const EvolutionMatrix E = evolution_matrix(p, T);
    const Eigen::Vector2cd sub(1.0, -1.0);
    CHECK((E.m * sub - std::exp(-I * 1.5 * T) * sub).norm() < 1e-10);

    // superradiant component after frame conversion
    const Eigen::Vector2cd S(kInvSqrt2, kInvSqrt2);
    const Complex sr = S.dot(to_qubit_frame(E, p, T).m * S);
    CHECK(std::abs(sr - superradiant_survival(p, T)) < 1e-10);
}

TEST_CASE("coarse-grained maps at N = 1 and for diagonal maps") {
    const EvolutionMatrix E = scaled_offdiag(0.3);
    CHECK((coarse_grained_series(E, 1).m - E.m).norm() == 0.0);
    CHECK((coarse_grained_badcavity(E, 1).m - E.m).norm() == 0.0);

    const EvolutionMatrix D = scaled_offdiag(0.0);
    const EvolutionMatrix S = coarse_grained_series(D, 7);
    CHECK(std::abs(S(1, 1) - std::pow(D(1, 1), 7)) < 1e-14);
    CHECK(std::abs(S(2, 2) - std::pow(D(2, 2), 7)) < 1e-14);
    CHECK(std::abs(S(1, 2)) == 0.0);
    CHECK(std::abs(S(2, 1)) == 0.0);
}

TEST_CASE("bad-cavity map with equal diagonal entries") {
    EvolutionMatrix E;
    E.m << Complex(0.9, 0.1), Complex(0.02, 0.01), Complex(-0.03, 0.0), Complex(0.9, 0.1);
    const long N = 9;
    const EvolutionMatrix B = coarse_grained_badcavity(E, N);
    CHECK(std::abs(B(1, 2) - static_cast<double>(N) * E(1, 2) * std::pow(E(1, 1), N - 1)) < 1e-14);
}

TEST_CASE("coarse-grained series error is cubic in the off-diagonal scale") {
    std::vector<double> xs, ys;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const EvolutionMatrix E = scaled_offdiag(eps);
        const double err = (coarse_grained_series(E, 12).m - matrix_power(E, 12).m).cwiseAbs().maxCoeff();
        xs.push_back(std::log10(eps));
        ys.push_back(std::log10(err));
    }
    const double mx = (xs[0] + xs[1] + xs[2] + xs[3]) / 4, my = (ys[0] + ys[1] + ys[2] + ys[3]) / 4;
    double sxy = 0, sxx = 0;
    for (int k = 0; k < 4; ++k) {
        sxy += (xs[k] - mx) * (ys[k] - my);
        sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    CHECK(sxy / sxx >= 2.7);
}

TEST_CASE("bad-cavity truncation tracks the series in its validity regime") {
    const PhysicalParams p = make_params(0.1, kInvSqrt2, 2.0, -2.0);
    const EvolutionMatrix E = evolution_matrix(p, 0.5);
    const EvolutionMatrix S = coarse_grained_series(E, 10), B = coarse_grained_badcavity(E, 10);
    CHECK((S.m - B.m).cwiseAbs().maxCoeff() / S.m.cwiseAbs().maxCoeff() < 1e-2);
}

TEST_CASE("amplitude methods") {
    const PhysicalParams p = make_params(0.1, kInvSqrt2, 2.0, -2.0);
    const InitialState init{0.2, 0.7};
    for (auto m : {SurvivalMethod::Series, SurvivalMethod::BadCavity, SurvivalMethod::Power}) {
        const SurvivalResult r = survival_amplitudes_N(p, init, {0.5, 0}, m);
        REQUIRE(r.amplitudes);
        CHECK(std::abs((*r.amplitudes)[0] - init.c01()) == 0.0);
        CHECK(std::abs((*r.amplitudes)[1] - init.c02()) == 0.0);
    }
    const auto power = survival_amplitudes_N(p, init, {0.5, 10}, SurvivalMethod::Power).state;
    const auto series = survival_amplitudes_N(p, init, {0.5, 10}, SurvivalMethod::Series).state;
    CHECK(std::abs(power.p10 - series.p10) < 1e-3);
    CHECK(std::abs(power.p01 - series.p01) < 1e-3);

    CHECK_THROWS_AS(parse_survival_method("magic"), Error);
    for (auto m : {SurvivalMethod::Exact, SurvivalMethod::Series, SurvivalMethod::BadCavity, SurvivalMethod::Power})
        CHECK(parse_survival_method(to_string(m)) == m);
}

TEST_CASE("exact channel close to the interval-map power in the bad cavity") {
    const PhysicalParams p = make_params(0.1, kInvSqrt2, 0.0, 0.0);
    const InitialState init{0.0, 0.0};
    const auto exact = survival_amplitudes_N(p, init, {0.1, 20}, SurvivalMethod::Exact).state;
    const auto power = survival_amplitudes_N(p, init, {0.1, 20}, SurvivalMethod::Power).state;
    CHECK(std::abs(concurrence(exact) - concurrence(power)) < 5e-2);
}

TEST_CASE("property: measured excitation does not grow while the field is empty") {
    zeno::testing::Gen gen(32);
    for (int k = 0; k < 8; ++k) {
        const PhysicalParams p = make_params(gen.uniform(0.05, 0.5), gen.uniform(0.3, 0.95), gen.uniform(-3, 3),
                                             gen.uniform(-3, 3));
        const auto traj = measured_trajectory_exact(p, gen.initial(), {gen.uniform(0.05, 0.5), 12});
        for (std::size_t n = 0; n + 1 < traj.size(); ++n) {
            const double photon = traj[n](2, 2).real();
            const double e0 = traj[n](0, 0).real() + traj[n](1, 1).real();
            const double e1 = traj[n + 1](0, 0).real() + traj[n + 1](1, 1).real();
            if (photon < 1e-8) CHECK(e1 <= e0 + 1e-6);
            CHECK_NOTHROW(traj[n + 1].validate(1e-8));
        }
    }
}

TEST_CASE("property: frequent measurements freeze the excitation") {
    const PhysicalParams p = make_params(0.3, kInvSqrt2, 0.5, 0.5);
    const InitialState init{0.2, 0.0};
    const double t = 1.0;
    std::vector<double> dev;
    for (long N : {10, 20, 40, 80}) {
        const auto x = measured_evolution_exact(p, init, {t / N, N}).back();
        dev.push_back(1.0 - (x.p10 + x.p01));
    }
    for (std::size_t k = 0; k + 1 < dev.size(); ++k) {
        CHECK(dev[k + 1] < dev[k]);
        CHECK(dev[k + 1] / dev[k] == doctest::Approx(0.5).epsilon(0.1));
    }
}
