// perturbation.hpp — Slow-pole/residue series, perturbative terms x_k(t), asymptotic
// GKSL parameters and the initial-layer size.

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "rwasb/kernels.hpp"
#include "rwasb/polynomial.hpp"

namespace rwasb::perturbation {

using kernels::ExpSumKernel;
using kernels::MomentTable;

struct InsufficientMomentsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegeneratePoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// x_k(t) = (sum_j coeffs[j] t^j) * exp(-rate t)
struct PolyExp {
    Poly coeffs;
    Complex rate;  // equals the zeroth moment of the kernel

    Complex eval(double t) const { return poly_eval(coeffs, t) * std::exp(-rate * t); }
    int degree() const { return static_cast<int>(poly_trim(coeffs, 0.0).size()) - 1; }
};

// Truncated series for the slow pole p(lambda) = sum p_terms[n] lambda^{2n}
// and the residue r(lambda) = sum r_terms[n] lambda^{2n}.
struct PoleExpansion {
    std::vector<Complex> p_terms;
    std::vector<Complex> r_terms;  // may be empty until residue_series is run

    int order() const { return static_cast<int>(p_terms.size()) - 1; }

    Complex pole(double lambda) const;
    Complex residue(double lambda) const;
};

// Time-independent generator data of the perturbative part.
struct AsymptoticGKSL {
    double gamma_rate;   // -2 Re p(lambda)
    double lamb_shift;   // -Im p(lambda)
    Complex r;           // corrected-initial-condition factor
};

enum class TstarMode { Asymptotic, Exact };

// k x k banded determinant D_k as a polynomial in p; D_0 = 1.
Poly wronski_D(const MomentTable& moments, int k);

// x_k(t) obtained by applying D_k(d/dt) (d/dt)^k to t^k e^{-G0 t}.
PolyExp perturbative_term(const MomentTable& moments, int k);

// Fills p_terms[0..n] by composition enumeration; r_terms left empty.
PoleExpansion pole_series(const MomentTable& moments, int n);

// Fills r_terms[0..n] from the pole series (r_0 = 1).
PoleExpansion residue_series(const MomentTable& moments, const PoleExpansion& pole, int n);

// Both series at once.
PoleExpansion pole_residue_series(const MomentTable& moments, int n);

// r(lambda) exp(p(lambda) t)
Complex x_pert(const PoleExpansion& expansion, double lambda, double t);

// sum_{k<=n} x_k(t) lambda^{2k}
Complex series_x(const MomentTable& moments, int n, double lambda, double t);

AsymptoticGKSL asymptotic_gksl(const PoleExpansion& expansion, double lambda);

// Time at which the perturbative density matrix becomes physical; nullopt when
// it is physical from t = +0 (|r| <= 1).
std::optional<double> initial_layer_tstar(const PoleExpansion& expansion, double lambda,
                                          TstarMode mode);

// Closed-form leading-order estimate from the per-peak spectral densities.
double lorentz_tstar(const ExpSumKernel& kernel, double lambda);

}  // namespace rwasb::perturbation
