#pragma once

/**
 * @file cauchy.hpp
 * @brief Cauchy-type problem RL-D^gamma u = I[A; alpha, beta] f(t, u) on [a, b]
 * with initial data C_1..C_n, n = ceil(gamma), solved through the equivalent
 * Volterra equation
 *
 *     u(t) = u0(t) + (RL-I^gamma I[A; alpha, beta] f(., u))(t),
 *     u0(t) = sum_k C_k (t - a)^(gamma - k) / Gamma(gamma - k + 1),
 *
 * by Picard iteration on consecutive windows short enough to contract.
 */

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "genfrac/kernel.hpp"
#include "genfrac/operator.hpp"
#include "genfrac/sampled.hpp"

namespace genfrac {

struct CauchyProblem {
    explicit CauchyProblem(KernelSpec k) : kernel(std::move(k)) {}

    KernelSpec kernel;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double a = 0.0;
    double b = 1.0;
    std::vector<double> constants;             ///< C_1..C_n
    std::function<double(double, double)> rhs;  ///< f(t, u)
    double lipschitz = 1.0;                    ///< C with |f(t,y1) - f(t,y2)| <= C |y1 - y2|
    TruncationPolicy trunc{};

    /// ceil(gamma).
    int n() const;
    /// Throws DomainError on alpha <= 0, beta < 0, gamma <= 0, wrong constant
    /// count, b <= a, lipschitz <= 0 or a missing right-hand side.
    void validate() const;
    /// True when u0 blows up at t = a.
    bool singular_at_a() const;
};

/// u0(t). Throws DomainError at t = a when a term with negative exponent has C_k != 0.
double volterra_u0(const CauchyProblem& p, double t);

/// u0 on the uniform grid of `intervals` intervals over [a, b]; t = a is
/// excluded (first_node = 1) when u0 is singular there.
SampledFunction volterra_u0_grid(const CauchyProblem& p, std::size_t intervals);

/// Kernel of the composed operator RL-I^gamma I[A; alpha, beta], to be used at
/// orders (alpha + gamma, beta): a_n(alpha, beta) Gamma(beta n + alpha) / Gamma(beta n + alpha + gamma).
KernelSpec volterra_kernel(const CauchyProblem& p);

/// The Volterra operator on [a, b] at orders (alpha + gamma, beta).
GenOperator volterra_operator(const CauchyProblem& p);

/// Contraction constant C w^{alpha+gamma} / (alpha+gamma) sup_{[0, w^beta]} |A_V|
/// for a window of width w, A_V the Volterra kernel.
double contraction_constant(const CauchyProblem& p, double width);

/// 0.9 h* with contraction_constant(p, h*) = 1, found by bisection, capped at b - a.
double contraction_step(const CauchyProblem& p);

struct WindowReport {
    double t_start = 0.0;
    double t_end = 0.0;
    std::size_t iterations = 0;
    double ratio_bound = 0.0;              ///< contraction constant for this window
    std::vector<double> difference_norms;  ///< max |u_{k+1} - u_k| per sweep
};

struct CauchySolution {
    SampledFunction u;
    double step = 0.0;      ///< window width used
    double h_max = 0.0;     ///< contraction_step
    double residual = 0.0;  ///< max |u - u0 - V f(., u)| over the output nodes
    std::vector<WindowReport> windows;
};

/// Marches ceil((b-a)/h) windows, each resolved by N_per_step grid intervals,
/// running Picard sweeps until successive differences fall below tol.
/// Throws ConvergenceError naming the window when max_picard is exhausted.
CauchySolution solve_cauchy(const CauchyProblem& p, std::size_t n_per_step, double tol,
                            std::size_t max_picard);

}  // namespace genfrac
