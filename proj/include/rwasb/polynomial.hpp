// polynomial.hpp — Dense complex polynomials in one variable (ascending coefficients)

#pragma once

#include <complex>
#include <vector>

namespace rwasb {

using Complex = std::complex<double>;

// Polynomial c[0] + c[1] z + c[2] z^2 + ...
using Poly = std::vector<Complex>;

inline Poly poly_trim(Poly p, double tol = 0.0) {
    while (p.size() > 1 && std::abs(p.back()) <= tol) p.pop_back();
    return p;
}

inline Complex poly_eval(const Poly& p, Complex z) {
    Complex acc{0.0, 0.0};
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
    return acc;
}

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

inline Poly poly_scale(Poly a, Complex s) {
    for (auto& c : a) c *= s;
    return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

inline Poly poly_derivative(const Poly& p) {
    if (p.size() <= 1) return {Complex{0.0, 0.0}};
    Poly r(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = double(i) * p[i];
    return r;
}

// Coefficients of p(z + a), the Taylor shift.
inline Poly poly_shift(const Poly& p, Complex a) {
    Poly r{Complex{0.0, 0.0}};
    Poly mono{a, Complex{1.0, 0.0}};  // (z + a)
    Poly pw{Complex{1.0, 0.0}};
    for (std::size_t i = 0; i < p.size(); ++i) {
        r = poly_add(r, poly_scale(pw, p[i]));
        if (i + 1 < p.size()) pw = poly_mul(pw, mono);
    }
    return r;
}

}  // namespace rwasb
