// kernels.hpp — Bath correlation functions, spectral densities, Laplace transforms, moments

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rwasb/polynomial.hpp"

namespace rwasb::kernels {

using rwasb::Complex;

struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivergingMomentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One Lorentz peak of the spectral density. dw is the peak center measured
// relative to the system frequency.
struct LorentzMode {
    double g;      // coupling, > 0
    double gamma;  // half width, > 0
    double dw;     // detuning

    LorentzMode(double g_, double gamma_, double dw_) : g(g_), gamma(gamma_), dw(dw_) {
        if (!(g > 0.0)) throw std::invalid_argument("LorentzMode: g must be > 0");
        if (!(gamma > 0.0)) throw std::invalid_argument("LorentzMode: gamma must be > 0");
    }

    // complex decay rate of the corresponding correlation-function exponential
    Complex nu() const { return {gamma, dw}; }
};

// Taylor coefficients of the kernel's Laplace transform at p = 0.
struct MomentTable {
    std::vector<Complex> values;  // [0 .. order]

    int order() const { return static_cast<int>(values.size()) - 1; }
    Complex operator[](int k) const { return values.at(static_cast<std::size_t>(k)); }
};

// Correlation function that is a finite sum of complex exponentials,
// G(t) = sum_l g_l^2 exp(-(gamma_l + i dw_l) t), t >= 0.
class ExpSumKernel {
public:
    explicit ExpSumKernel(std::vector<LorentzMode> modes) : modes_(std::move(modes)) {
        if (modes_.empty()) throw std::invalid_argument("ExpSumKernel: need at least one mode");
    }

    const std::vector<LorentzMode>& modes() const { return modes_; }

    Complex eval(double t) const;
    Complex laplace(Complex p) const;
    Complex moment(int k) const;
    double min_gamma() const;

private:
    std::vector<LorentzMode> modes_;
};

// Kernel given by an evaluable function of t >= 0, optionally with a
// closed-form Laplace transform and a declared number of finite moments
// (nullopt = all moments finite). `horizon` is the truncation time for
// quadrature; the kernel is treated as negligible (< 1e-14) beyond it.
struct GenericKernel {
    std::function<Complex(double)> eval;
    std::function<Complex(Complex)> laplace;  // may be empty
    std::optional<int> finite_moments;        // count of finite moments
    double horizon = 100.0;
};

// --- operations ----------------------------------------------------------

Complex eval_kernel(const ExpSumKernel& k, double t);
Complex eval_kernel(const GenericKernel& k, double t);

// lambda^{-2} G(t / lambda^2)
Complex eval_scaled_kernel(const ExpSumKernel& k, double t, double lambda);
Complex eval_scaled_kernel(const GenericKernel& k, double t, double lambda);

// J at frequency omega measured relative to the system frequency
double spectral_density(const ExpSumKernel& k, double omega);
double spectral_density_mode(const LorentzMode& m, double omega);

Complex laplace_G(const ExpSumKernel& k, Complex p);
Complex laplace_G(const GenericKernel& k, Complex p);

MomentTable moments(const ExpSumKernel& k, int n);
MomentTable moments(const GenericKernel& k, int n);

}  // namespace rwasb::kernels
