// kernels.cpp

#include "rwasb/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "rwasb/quadrature.hpp"

namespace rwasb::kernels {

Complex ExpSumKernel::eval(double t) const {
    if (t < 0.0) throw std::invalid_argument("ExpSumKernel::eval: t must be >= 0");
    Complex acc{0.0, 0.0};
    for (const auto& m : modes_) acc += m.g * m.g * std::exp(-m.nu() * t);
    return acc;
}

Complex ExpSumKernel::laplace(Complex p) const {
    Complex acc{0.0, 0.0};
    for (const auto& m : modes_) {
        const Complex denom = p + m.nu();
        if (std::abs(denom) < 1e-12 * std::abs(m.nu()))
            throw SingularityError("laplace_G: p too close to a kernel pole");
        acc += m.g * m.g / denom;
    }
    return acc;
}

// G_k = sum_l (-1)^k g_l^2 nu_l^{-(k+1)}
Complex ExpSumKernel::moment(int k) const {
    Complex acc{0.0, 0.0};
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    for (const auto& m : modes_) acc += sign * m.g * m.g / std::pow(m.nu(), k + 1);
    return acc;
}

double ExpSumKernel::min_gamma() const {
    double mn = modes_.front().gamma;
    for (const auto& m : modes_) mn = std::min(mn, m.gamma);
    return mn;
}

Complex eval_kernel(const ExpSumKernel& k, double t) { return k.eval(t); }

Complex eval_kernel(const GenericKernel& k, double t) {
    if (t < 0.0) throw std::invalid_argument("eval_kernel: t must be >= 0");
    return k.eval(t);
}

namespace {
void check_lambda(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("eval_scaled_kernel: lambda must be > 0");
}
}  // namespace

Complex eval_scaled_kernel(const ExpSumKernel& k, double t, double lambda) {
    check_lambda(lambda);
    return k.eval(t / (lambda * lambda)) / (lambda * lambda);
}

Complex eval_scaled_kernel(const GenericKernel& k, double t, double lambda) {
    check_lambda(lambda);
    return eval_kernel(k, t / (lambda * lambda)) / (lambda * lambda);
}

double spectral_density_mode(const LorentzMode& m, double omega) {
    const double d = omega - m.dw;
    return 2.0 * m.gamma * m.g * m.g / (m.gamma * m.gamma + d * d);
}

double spectral_density(const ExpSumKernel& k, double omega) {
    double acc = 0.0;
    for (const auto& m : k.modes()) acc += spectral_density_mode(m, omega);
    return acc;
}

Complex laplace_G(const ExpSumKernel& k, Complex p) { return k.laplace(p); }

Complex laplace_G(const GenericKernel& k, Complex p) {
    if (k.laplace) return k.laplace(p);
    return integrate([&](double t) { return std::exp(-p * t) * k.eval(t); }, 0.0, k.horizon,
                     1e-12);
}

MomentTable moments(const ExpSumKernel& k, int n) {
    if (n < 0) throw std::invalid_argument("moments: n must be >= 0");
    MomentTable table;
    table.values.reserve(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) table.values.push_back(k.moment(j));
    return table;
}

MomentTable moments(const GenericKernel& k, int n) {
    if (n < 0) throw std::invalid_argument("moments: n must be >= 0");
    if (k.finite_moments && n >= *k.finite_moments)
        throw DivergingMomentError("moments: requested moment beyond the declared finite count");
    MomentTable table;
    double fact = 1.0;
    for (int j = 0; j <= n; ++j) {
        if (j > 0) fact *= j;
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        const Complex val =
            integrate([&](double t) { return std::pow(t, j) * k.eval(t); }, 0.0, k.horizon, 1e-13);
        table.values.push_back(sign / fact * val);
    }
    return table;
}

}  // namespace rwasb::kernels
