#pragma once

/**
 * @file rl_oracle.hpp
 * @brief Riemann-Liouville differintegrals: closed form on powers and
 * product-integration quadrature on grid functions.
 */

#include "genfrac/sampled.hpp"

namespace genfrac {

/// RL integral of (t - a)^mu: Gamma(mu+1)/Gamma(mu+alpha+1) (t - a)^(mu+alpha).
double rl_integral_power(double alpha, double mu, double a, double t);

/// RL derivative of (t - a)^mu: Gamma(mu+1)/Gamma(mu+1-alpha) (t - a)^(mu-alpha).
double rl_derivative_power(double alpha, double mu, double a, double t);

/// (1/Gamma(alpha)) int_a^{t_j} (t_j - tau)^(alpha-1) f(tau) dtau at every node,
/// with f linearly interpolated between nodes. g(t_0) = 0.
SampledFunction rl_integral_quad(const SampledFunction& f, double alpha);

/// d^m/dt^m I^{m-alpha} f with m = floor(alpha) + 1 (m <= 3). Throws DomainError
/// when the grid has fewer than 2m + 2 intervals.
SampledFunction rl_derivative_quad(const SampledFunction& f, double alpha);

/// m-th derivative by second-order finite differences: central in the
/// interior, one-sided at both ends. m <= 3, N >= 2m + 2.
SampledFunction finite_difference(const SampledFunction& f, int m);

}  // namespace genfrac
