// laplace.hpp — Numerical inversion of Laplace transforms (fixed Talbot contour)

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace rwasb {

// Inverts f(t) = L^{-1}[F](t) on the fixed Talbot contour
//   s(theta) = r * theta * (cot(theta) + i),  r = 2M/(5t).
// Valid when all singularities of F lie on or near the negative real axis
// (decaying, non-oscillatory originals). Roundoff limits M to ~30-50;
// observed absolute accuracy ~1e-10 over a wide t range.
template <typename F>
double invert_laplace_real(const F& Ftilde, double t, int M = 40) {
    if (!(t > 0.0)) throw std::invalid_argument("invert_laplace_real: t must be > 0");
    const double pi = 3.14159265358979323846;
    const double r = 2.0 * M / (5.0 * t);
    // theta = 0 endpoint: s = r, sigma-correction term vanishes
    double acc = 0.5 * std::exp(r * t) * std::real(Ftilde(std::complex<double>(r, 0.0)));
    for (int k = 1; k < M; ++k) {
        const double theta = k * pi / M;
        const double cot = std::cos(theta) / std::sin(theta);
        const std::complex<double> s(r * theta * cot, r * theta);
        // sigma(theta) = theta + (theta*cot - 1)*cot
        const double sigma = theta + (theta * cot - 1.0) * cot;
        const std::complex<double> term =
            std::exp(s * t) * Ftilde(s) * std::complex<double>(1.0, sigma);
        acc += std::real(term);
    }
    return acc * r / M;
}

}  // namespace rwasb
