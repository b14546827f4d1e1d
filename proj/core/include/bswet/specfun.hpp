#pragma once

namespace bswet::specfun {

/// Exponential integral E1(t) = integral of u^-1 e^-u du over [t, inf), t > 0.
/// Relative error below 1e-12 over t in [1e-8, 50].
double expint_e1(double t);

/// exp(t) * E1(t). Stable for arbitrarily large t (no overflow).
double expint_e1_scaled(double t);

/// E[ 1 / (1 + c |X|^2) ] for X ~ CN(0, beta) and c > 0:
/// equals t * exp(t) * E1(t) with t = 1 / (c * beta).
/// Tends to 1 as c*beta -> 0 and to 0 as c*beta -> inf; both limits are
/// handled without overflow.
double expectation_inv_one_plus(double c, double beta);

}  // namespace bswet::specfun
