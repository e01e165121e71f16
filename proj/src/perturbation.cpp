// perturbation.cpp

#include "rwasb/perturbation.hpp"

#include <cmath>

namespace rwasb::perturbation {

namespace {

constexpr int kMaxOrder = 16;

void require_moments(const MomentTable& m, int needed, const char* who) {
    if (m.order() < needed) throw InsufficientMomentsError(std::string(who) + ": insufficient moments");
}

Complex eval_even_series(const std::vector<Complex>& terms, double lambda) {
    const double l2 = lambda * lambda;
    Complex acc{0.0, 0.0};
    double w = 1.0;
    for (const auto& c : terms) {
        acc += c * w;
        w *= l2;
    }
    return acc;
}

}  // namespace

Complex PoleExpansion::pole(double lambda) const { return eval_even_series(p_terms, lambda); }

Complex PoleExpansion::residue(double lambda) const {
    if (r_terms.empty()) throw std::logic_error("PoleExpansion: residue series not computed");
    return eval_even_series(r_terms, lambda);
}

Poly wronski_D(const MomentTable& moments, int k) {
    if (k < 0) throw std::invalid_argument("wronski_D: k must be >= 0");
    require_moments(moments, k, "wronski_D");
    // D_k = sum_{j=1..k} (-1)^{j-1} (G0 + p)^{j-1} G_j D_{k-j}
    const Poly q{moments[0], Complex{1.0, 0.0}};
    std::vector<Poly> d(static_cast<std::size_t>(k) + 1);
    d[0] = {Complex{1.0, 0.0}};
    for (int m = 1; m <= k; ++m) {
        Poly acc{Complex{0.0, 0.0}};
        Poly qpow{Complex{1.0, 0.0}};
        for (int j = 1; j <= m; ++j) {
            const double sign = (j % 2 == 1) ? 1.0 : -1.0;
            acc = poly_add(acc, poly_scale(poly_mul(qpow, d[m - j]), sign * moments[j]));
            qpow = poly_mul(qpow, q);
        }
        d[m] = acc;
    }
    return d[k];
}

PolyExp perturbative_term(const MomentTable& moments, int k) {
    if (k < 0) throw std::invalid_argument("perturbative_term: k must be >= 0");
    require_moments(moments, k, "perturbative_term");
    const Complex g0 = moments[0];
    const Poly dk = wronski_D(moments, k);

    // Work with P(t) where the function is P(t) e^{-G0 t}; d/dt maps P -> P' - G0 P.
    auto ddt = [&](const Poly& p) {
        return poly_add(poly_derivative(p), poly_scale(p, -g0));
    };

    Poly p(static_cast<std::size_t>(k) + 1, Complex{0.0, 0.0});
    p[static_cast<std::size_t>(k)] = 1.0;  // t^k
    for (int j = 0; j < k; ++j) p = ddt(p);

    Poly acc{Complex{0.0, 0.0}};
    Poly pj = p;
    for (std::size_t j = 0; j < dk.size(); ++j) {
        acc = poly_add(acc, poly_scale(pj, dk[j]));
        if (j + 1 < dk.size()) pj = ddt(pj);
    }

    double fact = 1.0;
    for (int j = 2; j <= k; ++j) fact *= j;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return PolyExp{poly_trim(poly_scale(acc, sign / fact)), g0};
}

PoleExpansion pole_series(const MomentTable& moments, int n) {
    if (n < 0) throw std::invalid_argument("pole_series: n must be >= 0");
    if (n > kMaxOrder) throw std::invalid_argument("pole_series: order capped at 16");
    require_moments(moments, n, "pole_series");
    PoleExpansion e;
    e.p_terms.resize(static_cast<std::size_t>(n) + 1);
    e.p_terms[0] = -moments[0];
    for (int m = 1; m <= n; ++m) {
        // all 2^{m-1} compositions of m, encoded by break masks
        Complex acc{0.0, 0.0};
        const unsigned long masks = 1UL << (m - 1);
        for (unsigned long mask = 0; mask < masks; ++mask) {
            Complex prod{1.0, 0.0};
            int parts = 0;
            int part = 1;
            for (int b = 0; b < m - 1; ++b) {
                if (mask & (1UL << b)) {
                    prod *= e.p_terms[static_cast<std::size_t>(part - 1)];
                    ++parts;
                    part = 1;
                } else {
                    ++part;
                }
            }
            prod *= e.p_terms[static_cast<std::size_t>(part - 1)];
            ++parts;
            acc += moments[parts] * prod;
        }
        e.p_terms[static_cast<std::size_t>(m)] = -acc;
    }
    return e;
}

PoleExpansion residue_series(const MomentTable& moments, const PoleExpansion& pole, int n) {
    if (pole.order() < n) throw std::invalid_argument("residue_series: pole series too short");
    (void)moments;
    PoleExpansion e = pole;
    if (std::abs(e.p_terms[0]) == 0.0)
        throw DegeneratePoleError("residue_series: zeroth moment vanishes");
    e.r_terms.assign(static_cast<std::size_t>(n) + 1, Complex{0.0, 0.0});
    e.r_terms[0] = 1.0;
    // from r = 1 + lambda^2 ptilde'/ptilde: p_0 r_m = m p_m - sum_{k=1}^{m-1} p_k r_{m-k}
    for (int m = 1; m <= n; ++m) {
        Complex acc = double(m) * e.p_terms[static_cast<std::size_t>(m)];
        for (int k = 1; k < m; ++k)
            acc -= e.p_terms[static_cast<std::size_t>(k)] *
                   e.r_terms[static_cast<std::size_t>(m - k)];
        e.r_terms[static_cast<std::size_t>(m)] = acc / e.p_terms[0];
    }
    return e;
}

PoleExpansion pole_residue_series(const MomentTable& moments, int n) {
    return residue_series(moments, pole_series(moments, n), n);
}

Complex x_pert(const PoleExpansion& expansion, double lambda, double t) {
    if (t < 0.0) throw std::invalid_argument("x_pert: t must be >= 0");
    return expansion.residue(lambda) * std::exp(expansion.pole(lambda) * t);
}

Complex series_x(const MomentTable& moments, int n, double lambda, double t) {
    Complex acc{0.0, 0.0};
    const double l2 = lambda * lambda;
    double w = 1.0;
    for (int k = 0; k <= n; ++k) {
        acc += perturbative_term(moments, k).eval(t) * w;
        w *= l2;
    }
    return acc;
}

AsymptoticGKSL asymptotic_gksl(const PoleExpansion& expansion, double lambda) {
    const Complex p = expansion.pole(lambda);
    return AsymptoticGKSL{-2.0 * p.real(), -p.imag(), expansion.residue(lambda)};
}

std::optional<double> initial_layer_tstar(const PoleExpansion& expansion, double lambda,
                                          TstarMode mode) {
    if (mode == TstarMode::Asymptotic) {
        // leading order: t* = -lambda^2 Re G1 / Re G0, with G1 = -r_1, G0 = -p_0
        if (expansion.r_terms.size() < 2)
            throw std::invalid_argument("initial_layer_tstar: need residue series to order 1");
        const double re_g0 = -expansion.p_terms[0].real();
        const double re_g1 = -expansion.r_terms[1].real();
        if (re_g0 == 0.0)
            throw std::domain_error("initial_layer_tstar: Re G0 vanishes");
        if (re_g1 > 0.0) return std::nullopt;  // |r| < 1 at small lambda
        return -lambda * lambda * re_g1 / re_g0;
    }
    const double abs_r = std::abs(expansion.residue(lambda));
    if (abs_r <= 1.0) return std::nullopt;
    const double re_p = expansion.pole(lambda).real();
    if (re_p == 0.0)
        throw std::domain_error("initial_layer_tstar: Re p = 0 with |r| > 1, no finite t*");
    return -std::log(abs_r) / re_p;
}

double lorentz_tstar(const ExpSumKernel& kernel, double lambda) {
    const double j_total = kernels::spectral_density(kernel, 0.0);
    double acc = 0.0;
    for (const auto& m : kernel.modes()) {
        const double jl = kernels::spectral_density_mode(m, 0.0);
        const double g2 = m.gamma * m.gamma, d2 = m.dw * m.dw;
        acc += (jl / j_total) * (1.0 / m.gamma) * (g2 - d2) / (g2 + d2);
    }
    return lambda * lambda * acc;
}

}  // namespace rwasb::perturbation
