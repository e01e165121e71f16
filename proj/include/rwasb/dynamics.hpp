// dynamics.hpp — Density matrices, time-local generator rates, propagators,
// two-time correlation functions, physicality diagnostics

#pragma once

#include <optional>

#include "rwasb/perturbation.hpp"
#include "rwasb/volterra.hpp"

namespace rwasb::dynamics {

using kernels::Complex;
using perturbation::PoleExpansion;
using volterra::Trajectory;

struct NodeSingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reduced density matrix in the (rho_11, rho_10) parameterization;
// rho_00 = 1 - p11 and rho_01 = conj(c10) are implied. Non-physical states
// are representable: `physical` records validity instead of rejecting.
struct QubitDensity {
    double p11 = 0.0;
    Complex c10{0.0, 0.0};
    bool physical = true;

    // positivity check: 0 <= p11 <= 1 and |c10|^2 <= p11 (1 - p11)
    static bool is_physical(double p11, Complex c10, double tol = 1e-12);
};

QubitDensity make_density(double p11, Complex c10);

struct GeneratorRates {
    double gamma_t = 0.0;
    double delta_omega_t = 0.0;
};

// rho_11 -> |x|^2 rho_11(0), rho_10 -> x rho_10(0)
QubitDensity density_from_x(Complex x, const QubitDensity& rho0);

// Gamma = -2 Re(xdot/x), DeltaOmega = -Im(xdot/x)
GeneratorRates generator_rates(Complex x, Complex xdot);

// rates along a trajectory; uses stored derivatives when present, otherwise a
// centered finite difference with step 1e-5 * (grid span)
GeneratorRates generator_rates(const Trajectory& traj, double t);

// two-parameter propagator: density_from_x with the ratio x(t2)/x(t1)
QubitDensity propagator(Complex x_t1, Complex x_t2, const QubitDensity& rho);

// <sigma_-(t2) sigma_+(t1)> = x(t2 - t1), exactly stationary
Complex corr_exact(const Trajectory& traj, double t1, double t2);

// regression-formula value x(t2)/x(t1)
Complex corr_markov(const Trajectory& traj, double t1, double t2);

// r(lambda) * corr_markov: the regression prediction with the constant
// renormalization; equals corr_exact identically on the perturbative part
Complex corr_renormalized(const Trajectory& traj, const PoleExpansion& expansion, double t1,
                          double t2);

struct PhysicalityReport {
    std::vector<bool> physical;                 // one entry per grid point
    std::optional<double> first_physical_time;  // first grid time physical ever after
};

PhysicalityReport physicality_report(const Trajectory& traj, const QubitDensity& rho0);

// Analytic crossing time for the exponential perturbative form r e^{pt}:
// 0 if physical from t = +0, nullopt if never physical.
std::optional<double> pert_first_physical_time(const PoleExpansion& expansion, double lambda,
                                               const QubitDensity& rho0);

}  // namespace rwasb::dynamics
