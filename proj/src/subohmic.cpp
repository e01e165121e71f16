// subohmic.cpp

#include "rwasb/subohmic.hpp"

#include <cmath>

#include "rwasb/quadrature.hpp"

namespace rwasb::subohmic {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

double dawson(double x) {
    if (x < 0.0) return -dawson(-x);
    if (x < 1.0) {
        // daw(x) = sum (-2)^n x^{2n+1} / (2n+1)!!
        double term = x, acc = x;
        for (int n = 1; n < 40; ++n) {
            term *= -2.0 * x * x / (2.0 * n + 1.0);
            acc += term;
            if (std::abs(term) < 1e-16 * std::abs(acc)) break;
        }
        return acc;
    }
    if (x < 6.5) {
        // daw(x) = int_0^x e^{u^2 - x^2} du = int_0^x e^{-v(2x - v)} dv (v = x - u);
        // every exponent is <= 0, so no cancellation.
        auto f = [x](double v) { return Complex{std::exp(-v * (2.0 * x - v)), 0.0}; };
        return integrate(f, 0.0, x, 1e-14).real();
    }
    // asymptotic: sum_n (2n-1)!! / (2^{n+1} x^{2n+1})
    const double ix2 = 1.0 / (x * x);
    double term = 0.5 / x, acc = term;
    for (int n = 1; n < 20; ++n) {
        term *= (2.0 * n - 1.0) * 0.5 * ix2;
        acc += term;
        if (term < 1e-17) break;
    }
    return acc;
}

double erfcx(double y) {
    if (y < 0.0) throw std::invalid_argument("erfcx: y must be >= 0");
    if (y <= 8.0) return std::exp(y * y) * std::erfc(y);
    // asymptotic: 1/(y sqrt(pi)) * sum (-1)^n (2n-1)!! / (2 y^2)^n
    const double iy2 = 0.5 / (y * y);
    double term = 1.0, acc = 1.0;
    for (int n = 1; n < 20; ++n) {
        term *= -(2.0 * n - 1.0) * iy2;
        acc += term;
        if (std::abs(term) < 1e-17) break;
    }
    return acc / (y * kSqrtPi);
}

double SubohmicMixKernel::eval(double t) const {
    if (t < 0.0) throw std::invalid_argument("SubohmicMixKernel::eval: t must be >= 0");
    const double s = std::sqrt(gamma * t);
    const double tail = std::exp(-gamma * t) - (2.0 / kSqrtPi) * dawson(s) + erfcx(s);
    return g * g * (chi * std::exp(-gamma * t) + 0.5 * (1.0 - chi) * tail);
}

Complex SubohmicMixKernel::laplace(Complex p) const {
    const Complex pg = p + gamma;
    if (std::abs(pg) < 1e-12 * gamma)
        throw kernels::SingularityError("SubohmicMixKernel::laplace: p at the kernel pole");
    const Complex sp = std::sqrt(p);
    const double sg = std::sqrt(gamma);
    return g * g * (chi / pg + (1.0 - chi) * sp / ((sp + sg) * pg));
}

double SubohmicMixKernel::x_zero(double t) const { return std::exp(-a() * t); }

double SubohmicMixKernel::x_half(double t) const {
    if (t < 0.0) throw std::invalid_argument("SubohmicMixKernel::x_half: t must be >= 0");
    const double at = a() * t;
    const double s = std::sqrt(at);
    return -((1.0 - chi) / (kSqrtPi * std::sqrt(chi))) * (g / gamma) *
           (s + (1.0 - 2.0 * at) * dawson(s));
}

GenericKernel SubohmicMixKernel::as_generic(double horizon) const {
    GenericKernel k;
    SubohmicMixKernel self = *this;
    k.eval = [self](double t) { return Complex{self.eval(t), 0.0}; };
    k.laplace = [self](Complex p) { return self.laplace(p); };
    k.finite_moments = 1;
    k.horizon = horizon;
    return k;
}

}  // namespace rwasb::subohmic
