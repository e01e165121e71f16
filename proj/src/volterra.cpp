// volterra.cpp

#include "rwasb/volterra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "rwasb/laplace.hpp"

namespace rwasb::volterra {

namespace {

using Vec = Eigen::VectorXcd;

void check_grid(const std::vector<double>& grid) {
    if (grid.empty() || grid.front() != 0.0)
        throw std::invalid_argument("grid must start at t = 0");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("grid must be strictly increasing");
}

Complex hermite(double t, double t0, double t1, Complex y0, Complex f0, Complex y1, Complex f1) {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * h * f0 +
           (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * h * f1;
}

// Dormand-Prince 5(4) with step control and dense output onto `grid` via
// cubic Hermite on accepted steps.
template <typename Rhs, typename Emit>
void integrate_dp5(const Rhs& rhs, Vec y, const std::vector<double>& grid,
                   const SolverOptions& opts, const Emit& emit) {
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                        e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                        e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const double t_end = grid.back();
    double t = 0.0;
    Vec f = rhs(t, y);
    emit(0, y, f);
    std::size_t next = 1;
    if (next >= grid.size()) return;

    double h = std::min(1e-4 * std::max(t_end, 1.0), t_end);
    while (t < t_end) {
        h = std::min(h, t_end - t);
        const Vec k1 = f;
        const Vec k2 = rhs(t + h / 5.0, y + h * (a21 * k1));
        const Vec k3 = rhs(t + 3.0 * h / 10.0, y + h * (a31 * k1 + a32 * k2));
        const Vec k4 = rhs(t + 4.0 * h / 5.0, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Vec k5 = rhs(t + 8.0 * h / 9.0, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Vec k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Vec ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Vec k7 = rhs(t + h, ynew);
        const Vec err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double norm = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double sc =
                opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double q = std::abs(err[i]) / sc;
            norm += q * q;
        }
        norm = std::sqrt(norm / double(y.size()));

        if (norm <= 1.0) {
            // accepted: fill grid points inside (t, t+h]
            while (next < grid.size() && grid[next] <= t + h + 1e-14 * t_end) {
                const double tg = std::min(grid[next], t + h);
                Vec yg(y.size());
                for (Eigen::Index i = 0; i < y.size(); ++i)
                    yg[i] = hermite(tg, t, t + h, y[i], k1[i], ynew[i], k7[i]);
                emit(next, yg, rhs(tg, yg));
                ++next;
            }
            t += h;
            y = ynew;
            f = k7;
            if (next >= grid.size()) return;
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(norm, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
        if (h < 1e-14 * std::max(t_end, 1.0))
            throw StiffnessError("adaptive step underflow");
    }
}

Complex peak_x(double g, double gamma, double lambda, double t, double coupling_factor) {
    if (!(g > 0.0 && gamma > 0.0 && lambda > 0.0))
        throw std::invalid_argument("single-peak solution: g, gamma, lambda must be > 0");
    if (t < 0.0) throw std::invalid_argument("single-peak solution: t must be >= 0");
    const double half = 0.5 * gamma;
    const double disc = half * half - coupling_factor * lambda * lambda * g * g;
    const double l2 = lambda * lambda;
    if (std::abs(disc) < 1e-14 * half * half) {
        // confluent limit
        return (1.0 + half * t / l2) * std::exp(-half * t / l2);
    }
    const Complex delta = std::sqrt(Complex(disc, 0.0));
    const Complex slow = (half - delta) / l2;
    const Complex fast = (half + delta) / l2;
    return ((half + delta) * std::exp(-slow * t) - (half - delta) * std::exp(-fast * t)) /
           (2.0 * delta);
}

}  // namespace

Complex Trajectory::interpolate(double t) const {
    if (times.empty()) throw std::logic_error("Trajectory: empty");
    if (t < times.front() - 1e-12 || t > times.back() + 1e-12)
        throw std::out_of_range("Trajectory::interpolate: t outside grid");
    t = std::clamp(t, times.front(), times.back());
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t i = (it == times.begin()) ? 0 : std::size_t(it - times.begin()) - 1;
    if (i + 1 >= times.size()) i = times.size() - 2;
    const double t0 = times[i], t1 = times[i + 1];
    if (!derivs.empty())
        return hermite(t, t0, t1, values[i], derivs[i], values[i + 1], derivs[i + 1]);
    const double s = (t - t0) / (t1 - t0);
    return (1.0 - s) * values[i] + s * values[i + 1];
}

std::vector<double> uniform_grid(double t_max, std::size_t n) {
    if (!(t_max > 0.0) || n < 2) throw std::invalid_argument("uniform_grid: bad arguments");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = t_max * double(i) / double(n - 1);
    return g;
}

Trajectory solve_expsum(const ExpSumKernel& kernel, double lambda,
                        const std::vector<double>& grid, const SolverOptions& opts) {
    if (!(lambda > 0.0)) throw std::invalid_argument("solve_expsum: lambda must be > 0");
    check_grid(grid);
    const auto& modes = kernel.modes();
    const std::size_t L = modes.size();
    const double il2 = 1.0 / (lambda * lambda);

    auto rhs = [&](double, const Vec& y) {
        Vec f(y.size());
        Complex sum{0.0, 0.0};
        for (std::size_t l = 0; l < L; ++l) sum += y[Eigen::Index(l + 1)];
        f[0] = -sum;
        for (std::size_t l = 0; l < L; ++l)
            f[Eigen::Index(l + 1)] = il2 * (modes[l].g * modes[l].g * y[0] -
                                            modes[l].nu() * y[Eigen::Index(l + 1)]);
        return f;
    };

    Trajectory out;
    out.times = grid;
    out.values.resize(grid.size());
    out.derivs.resize(grid.size());
    out.lambda = lambda;
    out.provenance = Provenance::ExactOde;

    Vec y0 = Vec::Zero(Eigen::Index(L + 1));
    y0[0] = 1.0;
    try {
        integrate_dp5(rhs, y0, grid, opts, [&](std::size_t i, const Vec& y, const Vec& f) {
            out.values[i] = y[0];
            out.derivs[i] = f[0];
        });
    } catch (const StiffnessError&) {
        std::string msg = "solve_expsum: step underflow at lambda=" + std::to_string(lambda) + ", nu={";
        for (const auto& m : modes)
            msg += "(" + std::to_string(m.gamma) + "," + std::to_string(m.dw) + ")";
        throw StiffnessError(msg + "}");
    }
    return out;
}

Trajectory solve_generic(const GenericKernel& kernel, double lambda,
                         const std::vector<double>& grid) {
    if (!(lambda > 0.0)) throw std::invalid_argument("solve_generic: lambda must be > 0");
    check_grid(grid);
    const std::size_t n = grid.size();
    if (n < 2) throw std::invalid_argument("solve_generic: need at least two grid points");
    const double h = grid[1] - grid[0];
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs((grid[i] - grid[i - 1]) - h) > 1e-9 * h)
            throw std::invalid_argument("solve_generic: grid must be uniform");

    std::vector<Complex> K(n);
    for (std::size_t j = 0; j < n; ++j)
        K[j] = kernels::eval_scaled_kernel(kernel, grid[j], lambda);

    Trajectory out;
    out.times = grid;
    out.values.assign(n, Complex{0.0, 0.0});
    out.derivs.assign(n, Complex{0.0, 0.0});
    out.lambda = lambda;
    out.provenance = Provenance::ExactOde;

    out.values[0] = 1.0;
    out.derivs[0] = 0.0;
    // implicit trapezoid in time, trapezoid weights in the convolution
    for (std::size_t m = 0; m + 1 < n; ++m) {
        Complex conv{0.5 * K[m + 1] * out.values[0]};
        for (std::size_t j = 1; j <= m; ++j) conv += K[m + 1 - j] * out.values[j];
        conv *= h;
        const Complex numer = out.values[m] + 0.5 * h * out.derivs[m] - 0.5 * h * conv;
        const Complex denom = 1.0 + 0.25 * h * h * K[0];
        out.values[m + 1] = numer / denom;
        out.derivs[m + 1] = -(conv + 0.5 * h * K[0] * out.values[m + 1]);
    }
    return out;
}

Trajectory solve_laplace(const std::function<Complex(Complex)>& laplace_G, double lambda,
                         const std::vector<double>& grid, int talbot_nodes) {
    if (!(lambda > 0.0)) throw std::invalid_argument("solve_laplace: lambda must be > 0");
    check_grid(grid);
    const double l2 = lambda * lambda;
    auto xtilde = [&](Complex p) { return 1.0 / (p + laplace_G(l2 * p)); };

    Trajectory out;
    out.times = grid;
    out.values.resize(grid.size());
    out.lambda = lambda;
    out.provenance = Provenance::ExactClosedForm;
    out.values[0] = 1.0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        out.values[i] = invert_laplace_real(xtilde, grid[i], talbot_nodes);
    return out;
}

Complex closed_form_single_peak(double g, double gamma, double lambda, double t) {
    return peak_x(g, gamma, lambda, t, 1.0);
}

double born_x_prime(double g, double gamma, double lambda, double t) {
    return peak_x(g, gamma, lambda, t, 2.0).real();
}

double tcl_gamma(int order, double g, double gamma, double lambda, double t) {
    if (order != 2 && order != 4) throw std::invalid_argument("tcl_gamma: order must be 2 or 4");
    if (t < 0.0) throw std::invalid_argument("tcl_gamma: t must be >= 0");
    const double u = gamma * t / (lambda * lambda);
    const double g2 = g * g;
    double rate = 2.0 * g2 / gamma * (1.0 - std::exp(-u));
    if (order == 4) {
        // exp(-u) sinh(u) = (1 - exp(-2u))/2, safe for large u
        const double extra = 0.5 * (1.0 - std::exp(-2.0 * u)) - u * std::exp(-u);
        rate += lambda * lambda * 4.0 * g2 * g2 / (gamma * gamma * gamma) * extra;
    }
    return rate;
}

Trajectory tcl_x(int order, double g, double gamma, double lambda,
                 const std::vector<double>& grid) {
    if (order != 2 && order != 4) throw std::invalid_argument("tcl_x: order must be 2 or 4");
    check_grid(grid);
    const double l2 = lambda * lambda;
    const double g2 = g * g;
    auto integral = [&](double t) {
        const double u = gamma * t / l2;
        double acc = 2.0 * g2 / gamma * (t - l2 / gamma * (1.0 - std::exp(-u)));
        if (order == 4) {
            const double c = 4.0 * g2 * g2 / (gamma * gamma * gamma);
            acc += l2 * c *
                   (0.5 * t - l2 / (4.0 * gamma) * (1.0 - std::exp(-2.0 * u)) -
                    l2 / gamma * (1.0 - (1.0 + u) * std::exp(-u)));
        }
        return acc;
    };
    Trajectory out;
    out.times = grid;
    out.values.resize(grid.size());
    out.derivs.resize(grid.size());
    out.lambda = lambda;
    out.provenance = (order == 2) ? Provenance::Tcl2 : Provenance::Tcl4;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = std::exp(-0.5 * integral(grid[i]));
        out.values[i] = x;
        out.derivs[i] = -0.5 * tcl_gamma(order, g, gamma, lambda, grid[i]) * x;
    }
    return out;
}

}  // namespace rwasb::volterra
