#pragma once

#include <cmath>
#include <complex>

#include <boost/math/quadrature/gauss.hpp>

namespace zeno::detail {

using Complex = std::complex<double>;

/// (e^z - 1) / z, stable near z = 0.
inline Complex phi1(Complex z) {
    if (std::abs(z) < 0.5) {
        Complex term = 1.0, sum = 1.0;
        for (int n = 1; n < 20; ++n) {
            term *= z / static_cast<double>(n + 1);
            sum += term;
        }
        return sum;
    }
    return (std::exp(z) - 1.0) / z;
}

/// (e^z - 1 - z) / z^2, stable near z = 0.
inline Complex psi2(Complex z) {
    if (std::abs(z) < 0.5) {
        Complex term = 0.5, sum = 0.5;
        for (int n = 1; n < 20; ++n) {
            term *= z / static_cast<double>(n + 2);
            sum += term;
        }
        return sum;
    }
    return (std::exp(z) - 1.0 - z) / (z * z);
}

/// Composite 30-point Gauss-Legendre over [a, b] with `panels` equal panels.
template <class F>
Complex gauss_legendre(F f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    Complex sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        sum += boost::math::quadrature::gauss<double, 30>::integrate(f, lo, lo + h);
    }
    return sum;
}

}  // namespace zeno::detail
