#pragma once

// Test-only numeric oracles, independent of the library implementation paths
// they check. Adaptive Simpson quadrature plus the two integral forms used to
// validate the special-function kernel.

#include <cmath>
#include <functional>

namespace testsupport {

inline double adaptive_simpson_impl(const std::function<double(double)>& f, double a, double b,
                                    double fa, double fm, double fb, double whole, double tol,
                                    int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_impl(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_impl(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 60) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_impl(f, a, b, fa, fm, fb, whole, tol, depth);
}

// E1(t) via the substitution u = t e^{-w}: integral of exp(-t e^{-w}) dw over
// (-inf, 0], truncated where the integrand underflows. Smooth everywhere, so
// plain adaptive Simpson resolves it for t from 1e-8 up to ~700.
inline double oracle_expint_e1(double t) {
    const double lo = std::log(t) - 45.0;
    const double hi = 0.0;
    if (lo >= hi) {
        // Entire mass sits above w = 0 only when t >= e^45; irrelevant here.
        return 0.0;
    }
    auto integrand = [t](double w) { return std::exp(-t * std::exp(-w)); };
    const double magnitude = std::exp(-t);  // peak value at w = 0
    return adaptive_simpson(integrand, lo, hi, 1e-13 * std::max(magnitude * 45.0, 1e-280));
}

// E[1 / (1 + c|X|^2)] for X ~ CN(0, beta): |X|^2 is exponential with mean
// beta, so the expectation is the integral of e^{-s} / (1 + c beta s) ds.
inline double oracle_expectation_inv_one_plus(double c_beta) {
    auto integrand = [c_beta](double s) { return std::exp(-s) / (1.0 + c_beta * s); };
    return adaptive_simpson(integrand, 0.0, 50.0, 1e-14);
}

}  // namespace testsupport
