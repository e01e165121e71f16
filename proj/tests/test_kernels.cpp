#include <cmath>
#include <random>

#include "doctest.h"
#include "rwasb/kernels.hpp"
#include "rwasb/quadrature.hpp"

using namespace rwasb;
using namespace rwasb::kernels;

namespace {

ExpSumKernel single_resonant() { return ExpSumKernel({LorentzMode(0.4, 1.0, 0.0)}); }

ExpSumKernel random_kernel(std::mt19937& rng, int max_modes = 3) {
    std::uniform_int_distribution<int> nd(1, max_modes);
    std::uniform_real_distribution<double> gd(0.1, 2.0), wd(0.3, 2.5), dd(-1.5, 1.5);
    std::vector<LorentzMode> modes;
    const int n = nd(rng);
    for (int i = 0; i < n; ++i) modes.emplace_back(gd(rng), wd(rng), dd(rng));
    return ExpSumKernel(modes);
}

}  // namespace

TEST_CASE("mode validation") {
    CHECK_THROWS_AS(LorentzMode(0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(LorentzMode(0.4, -1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ExpSumKernel({}), std::invalid_argument);
}

TEST_CASE("eval_kernel closed forms") {
    const auto k = single_resonant();
    CHECK(eval_kernel(k, 0.0).real() == doctest::Approx(0.16).epsilon(1e-14));
    CHECK(eval_kernel(k, 0.0).imag() == doctest::Approx(0.0));
    CHECK(eval_kernel(k, 1.0).real() == doctest::Approx(0.16 * std::exp(-1.0)).epsilon(1e-14));

    const ExpSumKernel two({LorentzMode(1.0, 1.0, 0.0), LorentzMode(2.0, 2.0, 0.0)});
    CHECK(eval_kernel(two, 0.0).real() == doctest::Approx(5.0).epsilon(1e-14));

    CHECK_THROWS_AS(eval_kernel(k, -0.1), std::invalid_argument);
}

TEST_CASE("eval_scaled_kernel") {
    const auto k = single_resonant();
    CHECK(eval_scaled_kernel(k, 0.7, 1.0) == eval_kernel(k, 0.7));
    CHECK(eval_scaled_kernel(k, 0.0, 0.5).real() == doctest::Approx(0.64).epsilon(1e-14));
    CHECK_THROWS_AS(eval_scaled_kernel(k, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(eval_scaled_kernel(k, 1.0, -0.5), std::invalid_argument);

    // integral of the scaled kernel is the zeroth moment regardless of lambda
    for (double lambda : {0.7, 1.0, 1.3}) {
        const auto q = integrate([&](double t) { return eval_scaled_kernel(k, t, lambda); }, 0.0,
                                 60.0 * lambda * lambda, 1e-12);
        CHECK(q.real() == doctest::Approx(k.moment(0).real()).epsilon(1e-9));
    }
}

TEST_CASE("spectral density") {
    const auto k = single_resonant();
    CHECK(spectral_density(k, 0.0) == doctest::Approx(2.0 * 0.16).epsilon(1e-14));
    CHECK(spectral_density(k, 1e6) < 1e-10);

    std::mt19937 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rk = random_kernel(rng);
        // J_l(Omega)/2 summed over modes equals Re G_0
        double half_sum = 0.0;
        for (const auto& m : rk.modes()) half_sum += 0.5 * spectral_density_mode(m, 0.0);
        CHECK(half_sum == doctest::Approx(rk.moment(0).real()).epsilon(1e-12));
        // nonnegativity on a frequency sweep
        for (double w = -20.0; w <= 20.0; w += 0.5) CHECK(spectral_density(rk, w) >= 0.0);
    }
}

TEST_CASE("laplace transform") {
    const auto k = single_resonant();
    CHECK(laplace_G(k, {0.0, 0.0}).real() == doctest::Approx(0.16).epsilon(1e-14));
    CHECK(laplace_G(k, {0.0, 0.0}) == k.moment(0));

    const ExpSumKernel a({LorentzMode(1.0, 1.0, 0.5)});
    const ExpSumKernel b({LorentzMode(0.7, 2.0, -0.3)});
    const ExpSumKernel ab({LorentzMode(1.0, 1.0, 0.5), LorentzMode(0.7, 2.0, -0.3)});
    const Complex p{0.3, 0.2};
    CHECK(std::abs(laplace_G(ab, p) - laplace_G(a, p) - laplace_G(b, p)) < 1e-14);

    CHECK_THROWS_AS(laplace_G(k, Complex{-1.0, 0.0}), SingularityError);
}

TEST_CASE("moments closed form and quadrature oracle") {
    const auto k = single_resonant();
    const auto m = moments(k, 2);
    CHECK(m[0].real() == doctest::Approx(0.16).epsilon(1e-14));
    CHECK(m[1].real() == doctest::Approx(-0.16).epsilon(1e-14));
    CHECK(m[2].real() == doctest::Approx(0.16).epsilon(1e-14));

    std::mt19937 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        const auto rk = random_kernel(rng);
        const auto table = moments(rk, 6);
        CHECK(table[0].real() == doctest::Approx(0.5 * spectral_density(rk, 0.0)).epsilon(1e-12));
        const double T = 40.0 / rk.min_gamma();
        double fact = 1.0;
        for (int j = 0; j <= 6; ++j) {
            if (j > 0) fact *= j;
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            // tolerance scaled to the integral's magnitude (t^j blows up the
            // absolute scale for large j)
            const double tol = 1e-9 * fact * std::abs(table[j]);
            const Complex q = integrate(
                [&](double t) { return std::pow(t, j) * rk.eval(t); }, 0.0, T, tol);
            CHECK(std::abs(sign / fact * q - table[j]) < 1e-8 * std::abs(table[j]));
        }
    }

    // -Re G_1 = (J(Omega)/2) / gamma for the resonant single peak
    CHECK(-m[1].real() ==
          doctest::Approx(0.5 * spectral_density(k, 0.0) / 1.0).epsilon(1e-14));
}

TEST_CASE("laplace transform Taylor property") {
    std::mt19937 rng(11);
    const int n = 5;
    for (int trial = 0; trial < 10; ++trial) {
        const auto rk = random_kernel(rng);
        const auto table = moments(rk, n + 2);
        // scaled remainder R(p) = (G~(p) - sum_{k<=n} G_k p^k) / p^{n+1}
        auto remainder_at = [&](double p) {
            Complex series{0.0, 0.0};
            double w = 1.0;
            for (int kk = 0; kk <= n; ++kk) {
                series += table[kk] * w;
                w *= p;
            }
            return (laplace_G(rk, {p, 0.0}) - series) / std::pow(p, n + 1);
        };
        // per-mode geometric tail bound on |R(p) - G_{n+1} - G_{n+2} p| that is
        // immune to cancellation between modes
        auto tail_bound = [&](double p) {
            double b = 0.0;
            for (const auto& m : rk.modes()) {
                const double nu = std::hypot(m.gamma, m.dw);
                b += m.g * m.g * p * p / (std::pow(nu, n + 4) * (1.0 - p / nu));
            }
            return b;
        };
        // cancellation noise: remainder_at subtracts O(|G~|) quantities before
        // dividing by p^{n+1}
        double scale = 0.0;
        for (const auto& m : rk.modes()) scale += m.g * m.g / std::hypot(m.gamma, m.dw);
        for (double p : {0.1, 0.05}) {
            const double noise = 50.0 * 2.2e-16 * scale / std::pow(p, n + 1);
            CHECK(std::abs(remainder_at(p) - table[n + 1] - table[n + 2] * p) <
                  tail_bound(p) + noise);
        }
    }
}

TEST_CASE("generic kernel") {
    const auto k = single_resonant();
    GenericKernel gen;
    gen.eval = [k](double t) { return k.eval(t); };
    gen.horizon = 60.0;

    CHECK(std::abs(eval_kernel(gen, 1.3) - k.eval(1.3)) < 1e-15);
    CHECK(std::abs(laplace_G(gen, Complex{0.5, 0.1}) - k.laplace({0.5, 0.1})) < 1e-9);

    const auto mg = moments(gen, 3);
    const auto me = moments(k, 3);
    for (int j = 0; j <= 3; ++j) CHECK(std::abs(mg[j] - me[j]) < 1e-8);

    gen.finite_moments = 1;
    CHECK_THROWS_AS(moments(gen, 1), DivergingMomentError);
    CHECK_NOTHROW(moments(gen, 0));
}
