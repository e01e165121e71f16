// matching.hpp — Short-time iterated expansion, overlap series, uniform matched expansion

#pragma once

#include <stdexcept>
#include <vector>

#include "rwasb/kernels.hpp"
#include "rwasb/perturbation.hpp"
#include "rwasb/polynomial.hpp"

namespace rwasb::matching {

using kernels::Complex;
using kernels::ExpSumKernel;
using kernels::GenericKernel;
using kernels::MomentTable;
using perturbation::PoleExpansion;

// Triangular table of power-series coefficients of Gtilde(p)^k.
struct PowerTable {
    // coeff[k][m], k = 0..n, m = 0..k
    std::vector<std::vector<Complex>> coeff;

    int order() const { return static_cast<int>(coeff.size()) - 1; }
    Complex at(int k, int m) const {
        return coeff.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(m));
    }
};

PowerTable power_table(const MomentTable& moments, int n);

// Sum of polynomial-times-exponential terms; closed under integration from 0
// and multiplication by exponentials, which keeps the iterated integrals of an
// exponential-sum kernel exact.
struct ExpPolySum {
    struct Term {
        Complex rate;  // f contains P(t) exp(-rate t)
        Poly poly;
    };
    std::vector<Term> terms;

    void add(Complex rate, const Poly& p);
    Complex eval(double t) const;
};

ExpPolySum integrate_from_zero(const ExpPolySum& f);

// n-th iterate of the integral form of the evolution equation; exact
// closed form for exponential-sum kernels.
Complex short_time_x(const ExpSumKernel& kernel, double lambda, double t, int n);

// Iterated trapezoid for generic kernels; `steps` points on [0, t].
Complex short_time_x(const GenericKernel& kernel, double lambda, double t, int n,
                     std::size_t steps = 4000);

// Double sum over the power table: the part shared by the short- and
// long-time expansions.
Complex overlap_x(const MomentTable& moments, double lambda, double t, int n);

// short-time + long-time - overlap, all three at the same order n.
Complex uniform_x(const ExpSumKernel& kernel, const PoleExpansion& expansion, double lambda,
                  double t, int n);

}  // namespace rwasb::matching
