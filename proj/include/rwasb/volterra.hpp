// volterra.hpp — Exact x(t; lambda) solvers and the Born/TCL comparators

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "rwasb/kernels.hpp"

namespace rwasb::volterra {

using kernels::Complex;
using kernels::ExpSumKernel;
using kernels::GenericKernel;

struct StiffnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Provenance {
    ExactOde,
    ExactClosedForm,
    Born,
    Tcl2,
    Tcl4,
    Perturbative,
    Uniform,
    ShortTime,
};

struct Trajectory {
    std::vector<double> times;    // strictly increasing, starts at 0
    std::vector<Complex> values;  // x at each grid point
    std::vector<Complex> derivs;  // dx/dt at each grid point (may be empty)
    double lambda = 1.0;
    Provenance provenance = Provenance::ExactOde;

    // cubic Hermite interpolation on the grid; throws outside [times.front(), times.back()]
    Complex interpolate(double t) const;
};

// Uniform grid helper: n points on [0, t_max].
std::vector<double> uniform_grid(double t_max, std::size_t n);

struct SolverOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
};

// Exact solution via the augmented linear ODE (one auxiliary variable per mode).
Trajectory solve_expsum(const ExpSumKernel& kernel, double lambda,
                        const std::vector<double>& grid, const SolverOptions& opts = {});

// Second-order trapezoidal quadrature of the integro-differential form on a
// uniform grid.
Trajectory solve_generic(const GenericKernel& kernel, double lambda,
                         const std::vector<double>& grid);

// Exact x(t; lambda) by numerical inversion of 1/(p + Gtilde(lambda^2 p)).
// Requires a closed-form Laplace transform and a decaying, non-oscillatory
// solution (singularities on the negative real axis).
Trajectory solve_laplace(const std::function<Complex(Complex)>& laplace_G, double lambda,
                         const std::vector<double>& grid, int talbot_nodes = 40);

// Single resonant-or-detuned-free peak closed form. Oscillatory regime
// (lambda^2 g^2 > (gamma/2)^2) takes the principal imaginary branch; the
// critical case is handled by its analytic limit.
Complex closed_form_single_peak(double g, double gamma, double lambda, double t);

// Population factor of the Born integro-differential solution (same closed
// form with the shifted discriminant).
double born_x_prime(double g, double gamma, double lambda, double t);

// Time-convolutionless decay rate, orders 2 and 4, single resonant peak.
double tcl_gamma(int order, double g, double gamma, double lambda, double t);

// x_TCL(t) = exp(-1/2 int_0^t Gamma), closed form for both orders.
Trajectory tcl_x(int order, double g, double gamma, double lambda,
                 const std::vector<double>& grid);

}  // namespace rwasb::volterra
