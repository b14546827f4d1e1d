#include "bswet/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace bswet::specfun {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;

// Power series around 0: E1(t) = -gamma - ln t + sum_{k>=1} (-1)^{k+1} t^k / (k k!).
// Used for t <= 1 where it converges in a couple dozen terms.
double e1_series_tail(double t) {
    double pow_term = 1.0;  // t^k / k!
    double sum = 0.0;
    for (int k = 1; k <= 60; ++k) {
        pow_term *= t / k;
        const double add = ((k & 1) ? pow_term : -pow_term) / k;
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// Modified Lentz evaluation of the continued fraction for exp(t) * E1(t),
// valid for t > 1:  1 / (t + 1 - 1^2 / (t + 3 - 2^2 / (t + 5 - ...))).
double e1_cf_scaled(double t) {
    constexpr double tiny = 1e-300;
    double b = t + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 400; ++i) {
        const double a = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h;
}

void require_positive(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("expint_e1: argument must be > 0");
}

}  // namespace

double expint_e1(double t) {
    require_positive(t);
    if (t <= 1.0) return -kEulerGamma - std::log(t) + e1_series_tail(t);
    return std::exp(-t) * e1_cf_scaled(t);
}

double expint_e1_scaled(double t) {
    require_positive(t);
    if (t <= 1.0) return std::exp(t) * (-kEulerGamma - std::log(t) + e1_series_tail(t));
    return e1_cf_scaled(t);
}

double expectation_inv_one_plus(double c, double beta) {
    if (!(c > 0.0)) throw std::invalid_argument("expectation_inv_one_plus: c must be > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("expectation_inv_one_plus: beta must be > 0");
    const double s = c * beta;
    if (!(s > 0.0)) return 1.0;  // product underflowed
    if (std::isinf(s)) return 0.0;
    const double t = 1.0 / s;
    if (std::isinf(t)) return 1.0;
    return t * expint_e1_scaled(t);
}

}  // namespace bswet::specfun
