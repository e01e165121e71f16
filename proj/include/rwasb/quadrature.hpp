// quadrature.hpp — Adaptive Gauss-Legendre quadrature for complex-valued integrands

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace rwasb {

namespace detail {

// Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton iteration
// on the Legendre polynomial.
template <int N>
struct GaussLegendre {
    std::array<double, N> nodes{};
    std::array<double, N> weights{};

    GaussLegendre() {
        const double pi = 3.14159265358979323846;
        for (int i = 0; i < (N + 1) / 2; ++i) {
            double x = std::cos(pi * (i + 0.75) / (N + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= N; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[i] = -x;
            nodes[N - 1 - i] = x;
            double w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[N - 1 - i] = w;
        }
    }
};

inline const GaussLegendre<15>& gl15() {
    static const GaussLegendre<15> rule;
    return rule;
}
inline const GaussLegendre<30>& gl30() {
    static const GaussLegendre<30> rule;
    return rule;
}

template <typename F>
std::complex<double> gl_panel(const F& f, double a, double b, bool fine) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::complex<double> acc{0.0, 0.0};
    if (fine) {
        const auto& r = gl30();
        for (int i = 0; i < 30; ++i) acc += r.weights[i] * f(mid + half * r.nodes[i]);
    } else {
        const auto& r = gl15();
        for (int i = 0; i < 15; ++i) acc += r.weights[i] * f(mid + half * r.nodes[i]);
    }
    return half * acc;
}

template <typename F>
std::complex<double> adapt(const F& f, double a, double b, double tol, int depth) {
    auto coarse = gl_panel(f, a, b, false);
    auto fine = gl_panel(f, a, b, true);
    if (std::abs(fine - coarse) <= tol || depth >= 48)
        return fine;
    double mid = 0.5 * (a + b);
    return adapt(f, a, mid, 0.5 * tol, depth + 1) + adapt(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace detail

// Adaptive quadrature of a complex-valued f on [a, b] to absolute tolerance tol.
template <typename F>
std::complex<double> integrate(const F& f, double a, double b, double tol = 1e-12) {
    if (!(b >= a)) throw std::invalid_argument("integrate: b < a");
    if (a == b) return {0.0, 0.0};
    return detail::adapt(f, a, b, tol, 0);
}

}  // namespace rwasb
