#pragma once

/// Small adaptive Simpson quadrature used for the geometric arclength oracle
/// and for independent integral cross-checks in the tests.

#include <cmath>
#include <complex>
#include <functional>

#include "scatterflat/errors.hpp"

namespace scatterflat::quadrature {

namespace detail {

template <typename V>
V simpson_step(double a, double b, V fa, V fm, V fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F, typename V>
V adaptive_rec(const F& f, double a, double b, V fa, V fm, V fb, V whole, double tol,
               int depth) {
    if (depth > 60)
        throw BudgetError("quadrature_budget", "adaptive Simpson recursion depth exceeded");
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    V flm = f(lm), frm = f(rm);
    V left = simpson_step(a, m, fa, flm, fm);
    V right = simpson_step(m, b, fm, frm, fb);
    V delta = left + right - whole;
    // The requested tolerance is halved per level; once it falls below the
    // rounding noise of the panel sum itself it can never be met, so it is
    // floored at a small multiple of machine epsilon relative to the panel.
    // A jump discontinuity still recurses to the depth cap: there the defect
    // shrinks only like the panel width, exactly as the relative floor does.
    const double eps_floor = 8.0 * 2.220446049250313e-16 * std::abs(left + right);
    if (std::abs(delta) <= 15.0 * std::max(tol, eps_floor))
        return left + right + delta / 15.0;
    return adaptive_rec(f, a, m, fa, flm, fm, left, tol * 0.5, depth + 1) +
           adaptive_rec(f, m, b, fm, frm, fb, right, tol * 0.5, depth + 1);
}

} // namespace detail

/// Integrate f over [a, b] to absolute tolerance tol. V may be double or
/// std::complex<double>.
template <typename V = double, typename F>
V adaptive_simpson(const F& f, double a, double b, double tol) {
    double m = 0.5 * (a + b);
    V fa = f(a), fm = f(m), fb = f(b);
    V whole = detail::simpson_step(a, b, fa, fm, fb);
    return detail::adaptive_rec(f, a, b, fa, fm, fb, whole, tol, 0);
}

} // namespace scatterflat::quadrature
