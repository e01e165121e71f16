// acceptance.cpp — end-to-end acceptance checks; prints one PASS/FAIL line per
// criterion with the measured values and exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>

#include "rwasb/dynamics.hpp"
#include "rwasb/laplace.hpp"
#include "rwasb/matching.hpp"
#include "rwasb/subohmic.hpp"
#include "rwasb/volterra.hpp"

using namespace rwasb;
using namespace rwasb::kernels;
using namespace rwasb::perturbation;

namespace {

int failures = 0;

void report(int id, bool ok, const char* fmt, ...) {
    if (!ok) ++failures;
    std::printf("%s %2d: ", ok ? "PASS" : "FAIL", id);
    va_list args;
    va_start(args, fmt);
    std::vprintf(fmt, args);
    va_end(args);
    std::printf("\n");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rho11(Complex x) { return std::norm(x); }

// 1. Figure 1: corrected perturbative population within 0.01 of exact for all
//    gamma t >= 3; uncorrected curve violates that bound in [3, 6].
void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const MomentTable m = moments(ExpSumKernel({LorentzMode(0.4, 1.0, 0.0)}), 12);
    const PoleExpansion e = pole_residue_series(m, 12);
    double worst = 0.0, worst_t = 0.0, uncorr_worst = 0.0;
    for (double t = 3.0; t <= 10.0; t += 0.01) {
        const double exact = rho11(volterra::closed_form_single_peak(0.4, 1.0, 1.0, t));
        const double d = std::abs(rho11(x_pert(e, 1.0, t)) - exact);
        if (d > worst) {
            worst = d;
            worst_t = t;
        }
        if (t <= 6.0)
            uncorr_worst = std::max(uncorr_worst,
                                    std::abs(rho11(std::exp(e.pole(1.0) * t)) - exact));
    }
    const double dt = seconds_since(t0);
    report(1, worst < 0.01 && uncorr_worst >= 0.01 && dt < 1.0,
           "figure 1: corrected max dev %.4f at gamma t = %.2f (limit 0.01), "
           "uncorrected max dev on [3,6] %.4f (must exceed 0.01), %.2f s",
           worst, worst_t, uncorr_worst, dt);
}

// 2. Figure 2: uniform second-order curve within 0.02 of exact on [0, 8] and
//    strictly closer than the zeroth-order WCLT curve.
void criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    const ExpSumKernel k({LorentzMode(0.4, 1.0, 0.0)});
    const MomentTable m = moments(k, 1);
    const PoleExpansion e = pole_residue_series(m, 1);
    double uni = 0.0, wclt = 0.0;
    for (double t = 0.0; t <= 8.0; t += 0.01) {
        const double exact = rho11(volterra::closed_form_single_peak(0.4, 1.0, 1.0, t));
        uni = std::max(uni, std::abs(rho11(matching::uniform_x(k, e, 1.0, t, 1)) - exact));
        wclt = std::max(wclt, std::abs(rho11(std::exp(-m[0] * t)) - exact));
    }
    const double dt = seconds_since(t0);
    report(2, uni < 0.02 && uni < wclt && dt < 1.0,
           "figure 2: uniform max dev %.4f (limit 0.02), WCLT max dev %.4f "
           "(uniform must be closer), %.2f s",
           uni, wclt, dt);
}

// 3. Order-12 partial sums of the pole/residue series against the single-peak
//    closed form, relative 1e-6, over 50 random parameter sets.
void criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> gamma_d(0.5, 2.0), g_d(0.2, 1.5), u_d(0.05, 0.5);
    double worst_p = 0.0, worst_r = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double gamma = gamma_d(rng), g = g_d(rng);
        const double u = u_d(rng);  // lambda^2 g^2 / (gamma/2)^2
        const double lambda = std::sqrt(u) * 0.5 * gamma / g;
        const MomentTable m = moments(ExpSumKernel({LorentzMode(g, gamma, 0.0)}), 12);
        const PoleExpansion e = pole_residue_series(m, 12);
        const double half = 0.5 * gamma;
        const double delta = std::sqrt(half * half - lambda * lambda * g * g);
        const Complex p_exact{-(half - delta) / (lambda * lambda), 0.0};
        const Complex r_exact{(half + delta) / (2.0 * delta), 0.0};
        worst_p = std::max(worst_p, std::abs(e.pole(lambda) - p_exact) / std::abs(p_exact));
        worst_r = std::max(worst_r, std::abs(e.residue(lambda) - r_exact) / std::abs(r_exact));
    }
    const double dt = seconds_since(t0);
    report(3, worst_p < 1e-6 && worst_r < 1e-6 && dt < 5.0,
           "series vs closed form at n = 12: worst rel err pole %.2e, residue %.2e "
           "(limit 1e-6), %.2f s",
           worst_p, worst_r, dt);
}

// 4. perturbative_term(k) equals the partial-fraction inverse Laplace of
//    (-1)^k p^k D_k(p) / (p + G0)^{k+1}, coefficientwise to 1e-10.
void criterion4() {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        MomentTable m;
        for (int j = 0; j <= 4; ++j) m.values.push_back(Complex{d(rng) + 1.5, d(rng)});
        for (int k = 0; k <= 4; ++k) {
            const Complex a = m[0];
            Poly num(static_cast<std::size_t>(k) + 1, Complex{0.0, 0.0});
            num.back() = Complex{1.0, 0.0};  // p^k
            num = poly_mul(num, wronski_D(m, k));
            const Poly shifted = poly_shift(num, -a);  // powers of q = p + G0
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            Poly coeffs(static_cast<std::size_t>(k) + 1, Complex{0.0, 0.0});
            double fact = 1.0;
            for (int i = 0; i <= k; ++i) {  // q^{k-i} / (p+a)^{k+1} -> t^i e^{-at} / i!
                if (i > 0) fact *= i;
                coeffs[static_cast<std::size_t>(i)] =
                    sign * shifted[static_cast<std::size_t>(k - i)] / fact;
            }
            const PolyExp got = perturbative_term(m, k);
            for (int i = 0; i <= k; ++i)
                worst = std::max(worst, std::abs(got.coeffs[static_cast<std::size_t>(i)] -
                                                 coeffs[static_cast<std::size_t>(i)]));
            worst = std::max(worst, std::abs(got.rate - a));
        }
    }
    report(4, worst < 1e-10,
           "determinant identity: worst coefficient deviation %.2e (limit 1e-10)", worst);
}

// 5. Volterra solver against the closed form on [0, 10] for 20 random peaks.
void criterion5() {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> gamma_d(0.5, 2.0), ratio_d(0.1, 0.9);
    const auto grid = volterra::uniform_grid(10.0, 101);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double gamma = gamma_d(rng);
        const double g = ratio_d(rng) * 0.5 * gamma;  // real-Delta regime at lambda = 1
        const ExpSumKernel k({LorentzMode(g, gamma, 0.0)});
        const auto traj = volterra::solve_expsum(k, 1.0, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            worst = std::max(worst, std::abs(traj.values[i] -
                                             volterra::closed_form_single_peak(g, gamma, 1.0,
                                                                               grid[i])));
    }
    report(5, worst < 1e-7, "solver vs closed form: max error %.2e (limit 1e-7)", worst);
}

// 6. |x_exact - x_pert(order n)| at t = 3 shrinks by 2^{2n+2} (within one octave)
//    when lambda is halved from 0.2 to 0.1, for n = 0, 1, 2.
void criterion6() {
    const MomentTable m = moments(ExpSumKernel({LorentzMode(0.4, 1.0, 0.0)}), 2);
    bool ok = true;
    double ratios[3];
    for (int n = 0; n <= 2; ++n) {
        const PoleExpansion e = pole_residue_series(
            MomentTable{{m.values.begin(), m.values.begin() + n + 1}}, n);
        auto err_at = [&](double lambda) {
            return std::abs(volterra::closed_form_single_peak(0.4, 1.0, lambda, 3.0) -
                            x_pert(e, lambda, 3.0));
        };
        ratios[n] = err_at(0.2) / err_at(0.1);
        ok = ok && ratios[n] >= std::pow(2.0, 2 * n + 1) && ratios[n] <= std::pow(2.0, 2 * n + 3);
    }
    report(6, ok,
           "error-order scaling: lambda-halving ratios %.1f, %.1f, %.1f "
           "(windows [2,8], [8,32], [32,128])",
           ratios[0], ratios[1], ratios[2]);
}

// 7. Initial layer for the lambda = 1, g/gamma = 0.4 preset: asymptotic t* = 1,
//    exact t* = ln(4/3)/0.2, and the physicality crossing agrees to 1e-6.
void criterion7() {
    const MomentTable m = moments(ExpSumKernel({LorentzMode(0.4, 1.0, 0.0)}), 12);
    const PoleExpansion series = pole_residue_series(m, 12);
    PoleExpansion exact;
    exact.p_terms = {Complex{-0.2, 0.0}};
    exact.r_terms = {Complex{4.0 / 3.0, 0.0}};

    const double target = std::log(4.0 / 3.0) / 0.2;
    const auto ta = initial_layer_tstar(series, 1.0, TstarMode::Asymptotic);
    const auto te = initial_layer_tstar(exact, 1.0, TstarMode::Exact);
    const auto tp = dynamics::pert_first_physical_time(exact, 1.0,
                                                       dynamics::make_density(1.0, {0.0, 0.0}));
    const bool ok = ta && std::abs(*ta - 1.0) < 1e-12 && te &&
                    std::abs(*te - target) < 1e-12 && tp && std::abs(*tp - *te) < 1e-6;
    report(7, ok,
           "initial layer: t*_asym = %.12f (expect 1), t*_exact = %.12f (expect %.12f), "
           "physicality crossing agrees to %.1e",
           ta ? *ta : -1.0, te ? *te : -1.0, target,
           (tp && te) ? std::abs(*tp - *te) : -1.0);
}

// 8. Regression renormalization is exact on the perturbative trajectory.
void criterion8() {
    volterra::Trajectory pert;
    pert.times = volterra::uniform_grid(10.0, 201);
    pert.lambda = 1.0;
    for (double t : pert.times) {
        const Complex x = (4.0 / 3.0) * std::exp(-0.2 * t);
        pert.values.push_back(x);
        pert.derivs.push_back(-0.2 * x);
    }
    PoleExpansion e;
    e.p_terms = {Complex{-0.2, 0.0}};
    e.r_terms = {Complex{4.0 / 3.0, 0.0}};
    double worst = 0.0;
    for (double t1 = 0.0; t1 <= 9.0; t1 += 0.75)
        for (double t2 = t1; t2 <= 10.0; t2 += 0.75)
            worst = std::max(worst, std::abs(dynamics::corr_renormalized(pert, e, t1, t2) -
                                             dynamics::corr_exact(pert, t1, t2)));
    report(8, worst < 1e-10,
           "correlation renormalization: max |r*markov - exact| = %.2e (limit 1e-10)", worst);
}

// 9. Long-time tail of the subohmic-mix first-order deviation: fitted log-log
//    slope on t in [20, 200] against the -0.5 +/- 0.05 target.
void criterion9() {
    const auto t0 = std::chrono::steady_clock::now();
    const subohmic::SubohmicMixKernel k(0.5, 1.0, 1.0);
    const double lambda = 0.1, l2 = lambda * lambda;
    auto xtilde = [&](Complex p) { return 1.0 / (p + k.laplace(l2 * p)); };
    const double ts[] = {20.0, 40.0, 80.0, 160.0, 200.0};
    double st = 0, sv = 0, stt = 0, stv = 0;
    for (double t : ts) {
        const double d = std::abs(invert_laplace_real(xtilde, t, 48) - k.x_zero(t));
        const double lt = std::log(t), lv = std::log(d);
        st += lt;
        sv += lv;
        stt += lt * lt;
        stv += lt * lv;
    }
    const double n = 5.0;
    const double slope = (n * stv - st * sv) / (n * stt - st * st);
    const double dt = seconds_since(t0);
    report(9, std::abs(slope + 0.5) <= 0.05 && dt < 10.0,
           "subohmic tail: fitted slope %.3f (target -0.5 +/- 0.05; measured decay is the "
           "t^-1.5 tail of the half-order coefficient), %.2f s",
           slope, dt);
}

// 10. Overlap series against the explicit low-order displays.
void criterion10() {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const Complex g0{d(rng) + 1.5, d(rng)}, g1{d(rng), d(rng)}, g2{d(rng), d(rng)};
        for (double lambda : {0.2, 0.5}) {
            const double l2 = lambda * lambda;
            for (double t : {0.0, 0.3, 1.0}) {
                const Complex n1 = 1.0 - g0 * t - g1 * l2;
                worst = std::max(worst, std::abs(matching::overlap_x(MomentTable{{g0, g1}},
                                                                     lambda, t, 1) - n1));
                const Complex n2 = n1 + 0.5 * g0 * g0 * t * t + 2.0 * g0 * g1 * t * l2 +
                                   (g1 * g1 + 2.0 * g0 * g2) * l2 * l2;
                worst = std::max(worst, std::abs(matching::overlap_x(MomentTable{{g0, g1, g2}},
                                                                     lambda, t, 2) - n2));
            }
        }
    }
    report(10, worst < 1e-12,
           "overlap identities: worst deviation from explicit displays %.2e (limit 1e-12)",
           worst);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
