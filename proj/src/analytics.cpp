#include "zeno/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "numerics.hpp"

namespace zeno {

namespace {

constexpr Complex I{0.0, 1.0};
constexpr double kQuadTol = 1e-11;
constexpr unsigned kMaxDepth = 15;
constexpr double kAgreeTol = 1e-7;

using detail::gauss_legendre;
using detail::phi1;
using detail::psi2;

// Pieces of a form factor needed for the tail treatment: F = smooth(w) - e^{i w_j T} e^{-i w T} h(w).
struct FormFactorParts {
    double omega_j;
    double omega_i;
    double T;
    bool cross;

    Complex full(double w) const {
        return cross ? form_factor_cross(w, omega_j, omega_i, T) : form_factor_diag(w, omega_j, T);
    }
    Complex smooth(double w) const {
        const double xj = omega_j - w;
        if (!cross) return (1.0 + I * xj * T) / (xj * xj);
        const double xi = omega_i - w;
        return 1.0 / (xj * xi) + I * T * phi1(I * (omega_j - omega_i) * T) / xi;
    }
    double h(double w) const { return cross ? 1.0 / ((omega_j - w) * (omega_i - w)) : 1.0 / ((omega_j - w) * (omega_j - w)); }
    double dh(double w) const {
        const double xj = omega_j - w;
        if (!cross) return 2.0 / (xj * xj * xj);
        const double xi = omega_i - w;
        return 1.0 / (xj * xj * xi) + 1.0 / (xj * xi * xi);
    }
};

struct QuadResult {
    Complex value;
    double error = 0.0;
};

template <class F>
QuadResult gk(F f, double a, double b) {
    if (!(b > a)) return {};
    double err = 0.0;
    const Complex v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, kMaxDepth, kQuadTol, &err);
    return {v, err};
}

// int J(w) F(w) dw over the real line with J Lorentzian. Substituting
// w = lambda tan(u) for |w| <= lambda and w = +-lambda / tan(v) beyond gives
// J dw = (W^2/pi) du (resp. dv) without evaluating tan near pi/2, which would
// put a rounding floor on the achievable tolerance. The window |w| <= L is
// integrated directly; the tails add the smooth part by quadrature and the
// oscillating part through a two-term integration-by-parts expansion.
QuadResult overlap_quadrature(const LorentzianSpectrum& J, const FormFactorParts& ff) {
    const double lam = J.lambda;
    const double L = std::max({50.0 * lam, 50.0 / ff.T, 4.0 * std::abs(ff.omega_j), 4.0 * std::abs(ff.omega_i)});

    std::vector<double> cuts{-L, -lam, lam, L, ff.omega_j, ff.omega_i};
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    QuadResult total;
    auto add = [&](const QuadResult& r) {
        total.value += r.value;
        total.error += r.error;
    };
    auto segment = [&](double wa, double wb, auto f) {
        if (wb <= lam && wa >= -lam) {
            add(gk([&](double u) { return f(lam * std::tan(u)); }, std::atan(wa / lam), std::atan(wb / lam)));
        } else if (wa >= lam) {
            add(gk([&](double v) { return f(lam / std::tan(v)); }, std::atan(lam / wb), std::atan(lam / wa)));
        } else {
            add(gk([&](double v) { return f(-lam / std::tan(v)); }, std::atan(lam / -wa), std::atan(lam / -wb)));
        }
    };
    auto full = [&](double w) { return ff.full(w); };
    auto smooth = [&](double w) { return ff.smooth(w); };
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) segment(cuts[k], cuts[k + 1], full);
    const double vL = std::atan(lam / L);
    add(gk([&](double v) { return smooth(lam / std::tan(v)); }, 0.0, vL));
    add(gk([&](double v) { return smooth(-lam / std::tan(v)); }, 0.0, vL));

    const double W2 = J.W * J.W;
    const double scale = W2 / std::numbers::pi;
    // tails of -e^{i w_j T} int g(w) e^{-i w T} dw with g = J h, in units of the (W^2/pi) prefactor
    auto B = [&](double w) {
        const double Jn = lam / (w * w + lam * lam);
        const double dJn = -2.0 * w * Jn / (w * w + lam * lam);
        const double g = Jn * ff.h(w);
        const double dg = dJn * ff.h(w) + Jn * ff.dh(w);
        const Complex e = std::exp(-I * w * ff.T);
        const Complex k = -I * ff.T;
        return g * e / k - dg * e / (k * k);
    };
    const Complex osc = -std::exp(I * ff.omega_j * ff.T) * (-B(L) + B(-L));
    total.value = scale * (total.value + osc);
    total.error *= scale;
    return total;
}

void check_T(double T) {
    if (!(T > 0.0) || !std::isfinite(T)) throw Error(ErrorKind::InvalidParameter, "measurement interval T must be > 0");
}

// alpha_j such that alpha_j W = r_j R
double alpha(const LorentzianSpectrum& J, const PhysicalParams& p, int j) {
    return J.W > 0.0 ? p.coupling(j) / J.W : 0.0;
}

void require_agreement(const OverlapValue& v, const char* what) {
    if (v.relative_disagreement() > kAgreeTol) {
        std::ostringstream os;
        os << what << ": quadrature and residue forms disagree (relative " << v.relative_disagreement()
           << ", quadrature error estimate " << v.quadrature_error << ")";
        throw Error(ErrorKind::Numerical, os.str());
    }
}

}  // namespace

Complex form_factor_diag(double omega, double omega_j, double T) {
    check_T(T);
    return T * T * psi2(I * (omega_j - omega) * T);
}

Complex form_factor_cross(double omega, double omega_j, double omega_i, double T) {
    check_T(T);
    const double xi = omega_i - omega;
    const double xj = omega_j - omega;
    const double delta = omega_j - omega_i;
    if (std::abs(xi * T) < 0.5) {
        // int_0^T e^{i delta t} t phi1(i x_i t) dt
        const int panels = 1 + static_cast<int>(std::abs(delta * T) / 4.0);
        return T * T * gauss_legendre([&](double s) { return std::exp(I * delta * T * s) * s * phi1(I * xi * T * s); },
                                      0.0, 1.0, panels);
    }
    return (-I * T / xi) * (phi1(I * xj * T) - phi1(I * delta * T));
}

double OverlapValue::relative_disagreement() const {
    const double scale = std::abs(residue);
    if (scale == 0.0) return std::abs(quadrature);
    return std::abs(quadrature - residue) / scale;
}

OverlapValue overlap_diag(const LorentzianSpectrum& J, double omega_j, double T) {
    check_T(T);
    OverlapValue v;
    const QuadResult q = overlap_quadrature(J, {omega_j, omega_j, T, false});
    v.quadrature = q.value;
    v.quadrature_error = q.error;
    // W^2 int_0^T dt int_0^t e^{-(lambda - i w_j) t'} dt'
    const Complex a = J.lambda - I * omega_j;
    v.residue = J.W * J.W * T * T * psi2(-a * T);
    return v;
}

OverlapValue overlap_cross(const LorentzianSpectrum& J, double omega_j, double omega_i, double T) {
    check_T(T);
    OverlapValue v;
    const QuadResult q = overlap_quadrature(J, {omega_j, omega_i, T, true});
    v.quadrature = q.value;
    v.quadrature_error = q.error;
    // W^2 int_0^T e^{i(w_j - w_i)t} (1 - e^{-a_i t}) / a_i dt
    const Complex ai = J.lambda - I * omega_i;
    const double delta = omega_j - omega_i;
    Complex r;
    if (std::abs(ai * T) >= 0.1) {
        r = (T / ai) * (phi1(I * delta * T) - phi1((I * delta - ai) * T));
    } else {
        const int panels = 1 + static_cast<int>(std::abs(delta * T) / 4.0);
        r = T * T * gauss_legendre([&](double s) { return std::exp(I * delta * T * s) * s * phi1(-ai * T * s); }, 0.0,
                                   1.0, panels);
    }
    v.residue = J.W * J.W * r;
    return v;
}

ZenoRates zeno_rates(const LorentzianSpectrum& J, const PhysicalParams& p, int j, double T) {
    p.validate();
    check_T(T);
    if (j != 1 && j != 2) throw Error(ErrorKind::InvalidParameter, "qubit index must be 1 or 2");
    const OverlapValue ov = overlap_diag(J, p.detuning(j), T);
    const double a2 = alpha(J, p, j) * alpha(J, p, j);

    const double re_scale = std::abs(ov.residue.real());
    const double re_dev = std::abs(ov.quadrature.real() - ov.residue.real());
    if (re_dev > kAgreeTol * re_scale || ov.relative_disagreement() > kAgreeTol) {
        std::ostringstream os;
        os << "zeno rate quadrature did not reach the residue value (relative deviation "
           << (re_scale > 0 ? re_dev / re_scale : re_dev) << ", achieved error estimate " << ov.quadrature_error
           << ")";
        throw Error(ErrorKind::Numerical, os.str());
    }
    ZenoRates r;
    r.gamma = a2 * ov.quadrature.real() / T;
    r.phase = a2 * ov.quadrature.imag() / T;
    r.gamma_residue = a2 * ov.residue.real() / T;
    r.phase_residue = a2 * ov.residue.imag() / T;
    r.quadrature_error = a2 * ov.quadrature_error / T;
    return r;
}

EvolutionMatrix perturbative_E(const LorentzianSpectrum& J, const PhysicalParams& p, double T) {
    p.validate();
    check_T(T);
    EvolutionMatrix E;
    for (int j = 1; j <= 2; ++j) {
        const int i = 3 - j;
        const double aj = alpha(J, p, j);
        const double ai = alpha(J, p, i);
        if (aj != 0.0) {
            const OverlapValue d = overlap_diag(J, p.detuning(j), T);
            require_agreement(d, "diagonal overlap");
            E.m(j - 1, j - 1) = std::exp(-aj * aj * d.quadrature);
        } else {
            E.m(j - 1, j - 1) = 1.0;
        }
        if (aj != 0.0 && ai != 0.0) {
            const OverlapValue c = overlap_cross(J, p.detuning(j), p.detuning(i), T);
            require_agreement(c, "cross overlap");
            E.m(j - 1, i - 1) = -aj * ai * c.quadrature;
        } else {
            E.m(j - 1, i - 1) = 0.0;
        }
    }
    return E;
}

Complex epsilon_transfer(const ZenoRates& rates_j, const ZenoRates& rates_i, Complex E_jj, double T, double t,
                         bool equal_freq) {
    check_T(T);
    if (!(t >= 0.0)) throw Error(ErrorKind::InvalidParameter, "time must be >= 0");
    if (equal_freq) return t / E_jj;
    const Complex x{rates_j.gamma - rates_i.gamma, rates_j.phase - rates_i.phase};
    return t * phi1(x * t);
}

ApproxModuli survival_modulus_approx(const PhysicalParams& p, const InitialState& init, double T, double t) {
    p.validate();
    check_T(T);
    if (!(t >= 0.0)) throw Error(ErrorKind::InvalidParameter, "time must be >= 0");
    const AmplitudeState a0 = build_initial(init);
    const LorentzianSpectrum J = make_spectrum(p);

    ApproxModuli out;
    out.n_measurements = std::lround(t / T);
    const double t_used = static_cast<double>(out.n_measurements) * T;
    out.remainder = t - t_used;

    const ZenoRates rates[2] = {zeno_rates(J, p, 1, T), zeno_rates(J, p, 2, T)};
    const EvolutionMatrix E = perturbative_E(J, p, T);
    const bool equal_freq = p.delta1 == p.delta2;
    const Complex c0[2] = {a0.c1, a0.c2};
    double moduli[2];
    for (int j = 0; j < 2; ++j) {
        const int i = 1 - j;
        const Complex eps = epsilon_transfer(rates[j], rates[i], E.m(j, j), T, t_used, equal_freq);
        moduli[j] = std::exp(-rates[j].gamma * t_used) * std::abs(c0[j] + (E.m(j, i) / T) * eps * c0[i]);
    }
    out.c1_abs = moduli[0];
    out.c2_abs = moduli[1];
    return out;
}

double concurrence_approx_formula(Complex c10, Complex c20, Complex E12, double gamma11, double T, double t) {
    const double a = std::abs(c10);
    const double b = std::abs(c20);
    const double cos_theta = (E12 * c20) == Complex{} ? 1.0 : std::cos(std::arg(E12 * c20));
    const double c = 2.0 * (a * a + 2.0 * a * b * std::abs(E12 / T) * t * cos_theta) * std::exp(-2.0 * gamma11 * t);
    return std::clamp(c, 0.0, 1.0);
}

double concurrence_approx(const PhysicalParams& p, const InitialState& init, double T, double t) {
    p.validate();
    check_T(T);
    if (std::abs(p.r1 - p.r2()) > 1e-12 || std::abs(std::abs(p.delta1) - std::abs(p.delta2)) > 1e-12)
        throw Error(ErrorKind::WrongRegime, "concurrence approximation requires r1 == r2 and delta1 == +-delta2");
    const LorentzianSpectrum J = make_spectrum(p);
    const ZenoRates r1 = zeno_rates(J, p, 1, T);
    const EvolutionMatrix E = perturbative_E(J, p, T);
    return concurrence_approx_formula(init.c01(), init.c02(), E.m(0, 1), r1.gamma, T, t);
}

double markov_rate(const LorentzianSpectrum& J, const PhysicalParams& p, int j) {
    const double a = alpha(J, p, j);
    return std::numbers::pi * a * a * J(p.detuning(j));
}

}  // namespace zeno
