#pragma once

/**
 * @file operator.hpp
 * @brief The general operator I[A; alpha, beta] on [a, b] and its derivatives.
 *
 * Two independent quadratures are provided. integral_direct interpolates the
 * smooth factor A((t-tau)^beta) f(tau) and integrates it against
 * (t-tau)^(alpha-1) exactly. integral_series expands A termwise,
 *
 *     I f = sum_n a_n Gamma(beta n + alpha) RL-I^{alpha + n beta} f,
 *
 * and integrates each power (t-tau)^(alpha+n beta-1) exactly against the
 * interpolant of f. Both are O(N^2) convolutions.
 */

#include <cstddef>
#include <functional>

#include "genfrac/kernel.hpp"
#include "genfrac/product_weights.hpp"
#include "genfrac/sampled.hpp"

namespace genfrac {

class GenOperator {
public:
    /// Throws DomainError unless a < b and radius > (b - a)^beta.
    GenOperator(KernelSpec kernel, OrderPair order, double a, double b, TruncationPolicy trunc = {});

    const KernelSpec& kernel() const noexcept { return kernel_; }
    const OrderPair& order() const noexcept { return order_; }
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    const TruncationPolicy& truncation() const noexcept { return trunc_; }

    /// Same kernel and truncation on another order pair or interval.
    GenOperator with_order(OrderPair order) const;
    GenOperator with_interval(double a, double b) const;

private:
    KernelSpec kernel_;
    OrderPair order_;
    double a_;
    double b_;
    TruncationPolicy trunc_;
};

SampledFunction integral_direct(const GenOperator& op, const SampledFunction& f);
SampledFunction integral_series(const GenOperator& op, const SampledFunction& f);

/// Collapsed weights  sum_n coef(n) * raw^{(alpha + n beta + shift)}  on the
/// grid of f. Terms are taken while the bound
/// |coef(n)| T^{nu_n} / nu_n * f_max stays above tail_tol (two consecutive
/// terms below it end the sum); finite-support kernels are summed in full.
ConvolutionWeights series_weights(const GenOperator& op, double shift,
                                  const std::function<double(std::size_t)>& coef, double h,
                                  std::size_t intervals, double f_max);

/// Direct-method weights: raw^{(alpha)} scaled by A((d h)^beta) per distance.
ConvolutionWeights direct_weights(const GenOperator& op, double h, std::size_t intervals);

/// (b - a)^alpha / alpha * sup_{0 <= x <= (b-a)^beta} |A(x)|, an upper bound for
/// the operator norm on both L^1 and the sup norm.
double operator_norm_bound(const GenOperator& op);

enum class DerivativeFlavor { rl_type, caputo_type };

/// Left inverse of a GenOperator built from the reciprocal kernel at orders
/// (m - alpha, beta), m = floor(alpha) + 1.
class DerivOperator {
public:
    DerivOperator(GenOperator base, DerivativeFlavor flavor);

    const GenOperator& base() const noexcept { return base_; }
    int m() const noexcept { return m_; }
    DerivativeFlavor flavor() const noexcept { return flavor_; }
    const KernelSpec& recip() const noexcept { return recip_op_.kernel(); }
    const GenOperator& recip_operator() const noexcept { return recip_op_; }

private:
    GenOperator base_;
    int m_;
    DerivativeFlavor flavor_;
    GenOperator recip_op_;
};

SampledFunction derivative(const DerivOperator& op, const SampledFunction& f);

enum class Side { left, right };

/// left: RL-I^gamma (I f); right: I (RL-I^gamma f).
SampledFunction compose_with_rl(const GenOperator& op, double gamma, const SampledFunction& f,
                                Side side);

}  // namespace genfrac
