// matching.cpp

#include "rwasb/matching.hpp"

#include <cmath>

namespace rwasb::matching {

PowerTable power_table(const MomentTable& moments, int n) {
    if (n < 0) throw std::invalid_argument("power_table: n must be >= 0");
    if (moments.order() < n) throw std::invalid_argument("power_table: insufficient moments");
    const Complex g0 = moments[0];
    if (std::abs(g0) == 0.0) throw std::invalid_argument("power_table: zeroth moment vanishes");

    PowerTable table;
    table.coeff.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        auto& row = table.coeff[static_cast<std::size_t>(k)];
        row.resize(static_cast<std::size_t>(k) + 1);
        row[0] = std::pow(g0, k);
        for (int m = 1; m <= k; ++m) {
            Complex acc{0.0, 0.0};
            for (int j = 1; j <= m; ++j) {
                const int mj = m - j;
                if (mj > k) continue;  // triangle holds all needed entries since mj <= m-1 <= k
                acc += double(j * k - m + j) * moments[j] * row[static_cast<std::size_t>(mj)];
            }
            row[static_cast<std::size_t>(m)] = acc / (double(m) * g0);
        }
    }
    return table;
}

void ExpPolySum::add(Complex rate, const Poly& p) {
    const double scale = 1.0 + std::abs(rate);
    for (auto& t : terms) {
        if (std::abs(t.rate - rate) <= 1e-12 * scale) {
            t.poly = poly_add(t.poly, p);
            return;
        }
    }
    terms.push_back(Term{rate, p});
}

Complex ExpPolySum::eval(double t) const {
    Complex acc{0.0, 0.0};
    for (const auto& term : terms) acc += poly_eval(term.poly, t) * std::exp(-term.rate * t);
    return acc;
}

ExpPolySum integrate_from_zero(const ExpPolySum& f) {
    ExpPolySum out;
    for (const auto& term : f.terms) {
        if (std::abs(term.rate) <= 1e-12) {
            // plain antiderivative, zero constant
            Poly q(term.poly.size() + 1, Complex{0.0, 0.0});
            for (std::size_t j = 0; j < term.poly.size(); ++j)
                q[j + 1] = term.poly[j] / double(j + 1);
            out.add(Complex{0.0, 0.0}, q);
        } else {
            // Q with Q' - mu Q = P gives int_0^t P e^{-mu s} ds = Q(t)e^{-mu t} - Q(0)
            const Complex mu = term.rate;
            Poly q(term.poly.size(), Complex{0.0, 0.0});
            for (std::size_t jj = term.poly.size(); jj-- > 0;) {
                Complex up = (jj + 1 < q.size()) ? double(jj + 1) * q[jj + 1] : Complex{0.0, 0.0};
                q[jj] = (up - term.poly[jj]) / mu;
            }
            out.add(mu, q);
            out.add(Complex{0.0, 0.0}, Poly{-q[0]});
        }
    }
    return out;
}

namespace {

// One iteration of the integral equation: g(t) = int_0^t dt2 int_0^t2 K(t2-t1) f(t1) dt1
ExpPolySum iterate_once(const ExpSumKernel& kernel, double lambda, const ExpPolySum& f) {
    const double il2 = 1.0 / (lambda * lambda);
    ExpPolySum inner_total;
    for (const auto& m : kernel.modes()) {
        const Complex nu_s = m.nu() * il2;
        const double amp = m.g * m.g * il2;
        // amp * e^{-nu_s t2} * int_0^{t2} e^{+nu_s t1} f(t1) dt1
        ExpPolySum shifted;
        for (const auto& term : f.terms) shifted.add(term.rate - nu_s, term.poly);
        ExpPolySum integ = integrate_from_zero(shifted);
        for (const auto& term : integ.terms)
            inner_total.add(term.rate + nu_s, poly_scale(term.poly, amp));
    }
    return integrate_from_zero(inner_total);
}

}  // namespace

Complex short_time_x(const ExpSumKernel& kernel, double lambda, double t, int n) {
    if (!(lambda > 0.0)) throw std::invalid_argument("short_time_x: lambda must be > 0");
    if (t < 0.0) throw std::invalid_argument("short_time_x: t must be >= 0");
    if (n < 0) throw std::invalid_argument("short_time_x: order must be >= 0");
    ExpPolySum iterate;
    iterate.add(Complex{0.0, 0.0}, Poly{Complex{1.0, 0.0}});
    Complex acc{1.0, 0.0};
    double sign = 1.0;
    for (int k = 1; k <= n; ++k) {
        iterate = iterate_once(kernel, lambda, iterate);
        sign = -sign;
        acc += sign * iterate.eval(t);
    }
    return acc;
}

Complex short_time_x(const GenericKernel& kernel, double lambda, double t, int n,
                     std::size_t steps) {
    if (!(lambda > 0.0)) throw std::invalid_argument("short_time_x: lambda must be > 0");
    if (t < 0.0) throw std::invalid_argument("short_time_x: t must be >= 0");
    if (t == 0.0 || n == 0) return {1.0, 0.0};
    const std::size_t N = std::max<std::size_t>(steps, 8);
    const double h = t / double(N);
    std::vector<Complex> K(N + 1);
    for (std::size_t j = 0; j <= N; ++j)
        K[j] = kernels::eval_scaled_kernel(kernel, h * double(j), lambda);

    std::vector<Complex> iterate(N + 1, Complex{1.0, 0.0});
    Complex acc{1.0, 0.0};
    double sign = 1.0;
    std::vector<Complex> inner(N + 1), outer(N + 1);
    for (int k = 1; k <= n; ++k) {
        // inner[i] = int_0^{t_i} K(t_i - s) iterate(s) ds, trapezoid
        for (std::size_t i = 0; i <= N; ++i) {
            Complex s{0.0, 0.0};
            if (i > 0) {
                s = 0.5 * (K[i] * iterate[0] + K[0] * iterate[i]);
                for (std::size_t j = 1; j < i; ++j) s += K[i - j] * iterate[j];
                s *= h;
            }
            inner[i] = s;
        }
        // outer[i] = int_0^{t_i} inner, cumulative trapezoid
        outer[0] = 0.0;
        for (std::size_t i = 1; i <= N; ++i)
            outer[i] = outer[i - 1] + 0.5 * h * (inner[i - 1] + inner[i]);
        iterate = outer;
        sign = -sign;
        acc += sign * iterate[N];
    }
    return acc;
}

Complex overlap_x(const MomentTable& moments, double lambda, double t, int n) {
    const PowerTable table = power_table(moments, n);
    const double l2 = lambda * lambda;
    Complex acc{0.0, 0.0};
    for (int k = 0; k <= n; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        for (int m = 0; m <= k; ++m) {
            double fact = 1.0;
            for (int j = 2; j <= k - m; ++j) fact *= j;
            acc += sign * table.at(k, m) * std::pow(t, k - m) / fact * std::pow(l2, m);
        }
    }
    return acc;
}

Complex uniform_x(const ExpSumKernel& kernel, const PoleExpansion& expansion, double lambda,
                  double t, int n) {
    if (expansion.order() != n || static_cast<int>(expansion.r_terms.size()) != n + 1)
        throw std::invalid_argument("uniform_x: expansion order must match the requested order");
    const MomentTable m = kernels::moments(kernel, n);
    return short_time_x(kernel, lambda, t, n) + perturbation::x_pert(expansion, lambda, t) -
           overlap_x(m, lambda, t, n);
}

}  // namespace rwasb::matching
