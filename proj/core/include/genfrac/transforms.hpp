#pragma once

/**
 * @file transforms.hpp
 * @brief Laplace and Fourier symbols of the general operator, a numerical
 * Laplace check, and the linear equation I f + c f = g.
 */

#include <complex>
#include <cstddef>
#include <vector>

#include "genfrac/kernel.hpp"
#include "genfrac/operator.hpp"
#include "genfrac/sampled.hpp"

namespace genfrac {

/// s^{-alpha} A_Gamma(s^{-beta}), principal branches. Requires Re s >= 0, s != 0.
///
/// The A_Gamma series is tried first; when it diverges or does not settle
/// within the truncation policy, a known closed-form continuation of the
/// kernel is used instead. Without one, OutOfRegionError is thrown.
std::complex<double> laplace_symbol(const KernelSpec& kernel, const OrderPair& order,
                                    std::complex<double> s, const TruncationPolicy& trunc = {});

/// k^{-alpha} e^{i alpha pi/2} A_Gamma(k^{-beta} e^{i beta pi/2}) for real k != 0,
/// which equals laplace_symbol at s = -ik.
std::complex<double> fourier_symbol(const KernelSpec& kernel, const OrderPair& order, double k,
                                    const TruncationPolicy& trunc = {});

/// Closed-form Laplace transform of an oracle-basis function with reference point 0.
double laplace_transform(const ClosedFormFunction& f, double s);

struct LaplaceCheck {
    double numeric = 0.0;    ///< int_0^T e^{-st} (I f)(t) dt, trapezoid rule
    double predicted = 0.0;  ///< s^{-alpha} A_Gamma(s^{-beta}) f^(s)
    double tail = 0.0;       ///< e^{-sT}
    bool horizon_warning = false;  ///< tail > 1e-6
};

/// Requires op.a() == 0; the operator is evaluated on [0, T] with `intervals` nodes.
LaplaceCheck laplace_numeric_check(const GenOperator& op, const ClosedFormFunction& f, double s,
                                   double T, std::size_t intervals = 4096);

struct LinearSolveResult {
    SampledFunction solution;
    double residual = 0.0;                ///< max |I f + c f - g|
    std::vector<double> difference_norms;  ///< max |f_{k+1} - f_k| per iteration
    double ratio_bound = 0.0;             ///< operator_norm_bound / |c|
    std::size_t iterations = 0;
};

/// Solves I f + c f = g by f_{k+1} = (g - I f_k)/c from f_0 = g/c.
/// Throws ConvergenceError when successive differences grow over 5 steps or
/// max_iter is exhausted.
LinearSolveResult solve_linear_integral_eq(const GenOperator& op, double c, const SampledFunction& g,
                                           double tol, std::size_t max_iter);

}  // namespace genfrac
