// dynamics.cpp

#include "rwasb/dynamics.hpp"

#include <cmath>

namespace rwasb::dynamics {

bool QubitDensity::is_physical(double p11, Complex c10, double tol) {
    if (p11 < -tol || p11 > 1.0 + tol) return false;
    return std::norm(c10) <= p11 * (1.0 - p11) + tol;
}

QubitDensity make_density(double p11, Complex c10) {
    return QubitDensity{p11, c10, QubitDensity::is_physical(p11, c10)};
}

QubitDensity density_from_x(Complex x, const QubitDensity& rho0) {
    const double p11 = std::norm(x) * rho0.p11;
    const Complex c10 = x * rho0.c10;
    return QubitDensity{p11, c10, QubitDensity::is_physical(p11, c10)};
}

GeneratorRates generator_rates(Complex x, Complex xdot) {
    if (std::abs(x) < 1e-13)
        throw NodeSingularityError("generator_rates: x at a node, rates undefined");
    const Complex logderiv = xdot / x;
    return GeneratorRates{-2.0 * logderiv.real(), -logderiv.imag()};
}

GeneratorRates generator_rates(const Trajectory& traj, double t) {
    const Complex x = traj.interpolate(t);
    Complex xdot;
    if (!traj.derivs.empty()) {
        // differentiate the Hermite interpolant via a tiny symmetric step;
        // the stored derivatives make this accurate to interpolation order
        const double h = 1e-7 * (traj.times.back() - traj.times.front());
        const double lo = std::max(traj.times.front(), t - h);
        const double hi = std::min(traj.times.back(), t + h);
        xdot = (traj.interpolate(hi) - traj.interpolate(lo)) / (hi - lo);
    } else {
        const double h = 1e-5 * (traj.times.back() - traj.times.front());
        const double lo = std::max(traj.times.front(), t - h);
        const double hi = std::min(traj.times.back(), t + h);
        xdot = (traj.interpolate(hi) - traj.interpolate(lo)) / (hi - lo);
    }
    return generator_rates(x, xdot);
}

QubitDensity propagator(Complex x_t1, Complex x_t2, const QubitDensity& rho) {
    if (std::abs(x_t1) < 1e-13)
        throw NodeSingularityError("propagator: x(t1) at a node, map singular");
    return density_from_x(x_t2 / x_t1, rho);
}

Complex corr_exact(const Trajectory& traj, double t1, double t2) {
    if (t2 < t1) throw std::invalid_argument("corr_exact: t2 must be >= t1");
    return traj.interpolate(t2 - t1);
}

Complex corr_markov(const Trajectory& traj, double t1, double t2) {
    if (t2 < t1) throw std::invalid_argument("corr_markov: t2 must be >= t1");
    const Complex x1 = traj.interpolate(t1);
    if (std::abs(x1) < 1e-13)
        throw NodeSingularityError("corr_markov: x(t1) at a node");
    return traj.interpolate(t2) / x1;
}

Complex corr_renormalized(const Trajectory& traj, const PoleExpansion& expansion, double t1,
                          double t2) {
    return expansion.residue(traj.lambda) * corr_markov(traj, t1, t2);
}

PhysicalityReport physicality_report(const Trajectory& traj, const QubitDensity& rho0) {
    PhysicalityReport report;
    report.physical.reserve(traj.times.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        report.physical.push_back(density_from_x(traj.values[i], rho0).physical);
    // first grid time after which every point is physical
    for (std::size_t i = traj.times.size(); i-- > 0;) {
        if (!report.physical[i]) {
            if (i + 1 < traj.times.size())
                report.first_physical_time = traj.times[i + 1];
            return report;
        }
    }
    if (!traj.times.empty()) report.first_physical_time = traj.times.front();
    return report;
}

std::optional<double> pert_first_physical_time(const PoleExpansion& expansion, double lambda,
                                               const QubitDensity& rho0) {
    if (rho0.p11 <= 0.0) return 0.0;  // ground-state population: fixed point, always physical
    const double bound2 = rho0.p11 - std::norm(rho0.c10);
    if (bound2 < 0.0) throw std::invalid_argument("pert_first_physical_time: rho0 not a state");
    // physical iff |r| e^{Re p t} <= sqrt(p11 - |c10|^2) / p11
    const double threshold = std::sqrt(bound2) / rho0.p11;
    const double abs_r = std::abs(expansion.residue(lambda));
    if (abs_r <= threshold) return 0.0;
    const double re_p = expansion.pole(lambda).real();
    if (re_p >= 0.0) return std::nullopt;
    return std::log(abs_r / threshold) / (-re_p);
}

}  // namespace rwasb::dynamics
