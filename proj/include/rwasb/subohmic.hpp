// subohmic.hpp — Mixed Lorentz/sub-ohmic kernel with a diverging first moment,
// its half-order correction, and the special functions it needs

#pragma once

#include "rwasb/kernels.hpp"

namespace rwasb::subohmic {

using kernels::Complex;
using kernels::GenericKernel;

// daw(x) = e^{-x^2} int_0^x e^{s^2} ds, absolute accuracy ~1e-12.
double dawson(double x);

// e^{y^2} erfc(y) for y >= 0, overflow-free.
double erfcx(double y);

// Kernel of the mixed spectral density: a Lorentz peak carrying weight chi
// plus a sqrt-tail component carrying 1 - chi. Only the zeroth moment is
// finite; the kernel decays like t^{-3/2}.
struct SubohmicMixKernel {
    double chi;    // mixture weight, in (0, 1)
    double g;      // coupling, > 0
    double gamma;  // width, > 0

    SubohmicMixKernel(double chi_, double g_, double gamma_) : chi(chi_), g(g_), gamma(gamma_) {
        if (!(chi > 0.0 && chi < 1.0))
            throw std::invalid_argument("SubohmicMixKernel: chi must be in (0,1)");
        if (!(g > 0.0)) throw std::invalid_argument("SubohmicMixKernel: g must be > 0");
        if (!(gamma > 0.0)) throw std::invalid_argument("SubohmicMixKernel: gamma must be > 0");
    }

    // G(t) for t >= 0
    double eval(double t) const;

    // Gtilde(p), principal square root; exact closed form
    Complex laplace(Complex p) const;

    // decay rate of the leading-order solution: Gtilde(0) = chi g^2 / gamma
    double a() const { return chi * g * g / gamma; }

    // leading order x_0(t) = e^{-a t}
    double x_zero(double t) const;

    // half-order coefficient: x(t; lambda) ~ x_0(t) + lambda x_half(t)
    double x_half(double t) const;

    // adapter for the generic solvers; declares a single finite moment
    GenericKernel as_generic(double horizon = 400.0) const;
};

}  // namespace rwasb::subohmic
