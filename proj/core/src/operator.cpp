#include "genfrac/operator.hpp"

#include <cmath>
#include <sstream>

#include "genfrac/errors.hpp"
#include "genfrac/rl_oracle.hpp"

namespace genfrac {

namespace {

void require_matching_interval(const GenOperator& op, const SampledFunction& f, const char* who) {
    if (f.a() != op.a() || f.b() != op.b()) {
        std::ostringstream os;
        os << who << ": function interval [" << f.a() << ", " << f.b()
           << "] differs from operator interval [" << op.a() << ", " << op.b() << "]";
        throw DomainError(os.str());
    }
    if (f.first_node() != 0) {
        throw DomainError(std::string(who) + ": function has no value at t = a");
    }
}

}  // namespace

GenOperator::GenOperator(KernelSpec kernel, OrderPair order, double a, double b,
                         TruncationPolicy trunc)
    : kernel_(std::move(kernel)), order_(order), a_(a), b_(b), trunc_(trunc) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
        throw DomainError("operator: need finite a < b");
    }
    trunc_.validate();
    const double reach = std::pow(b - a, order.beta());
    if (!(kernel_.radius() > reach)) {
        std::ostringstream os;
        os << "operator: radius condition violated, (b-a)^beta = " << reach
           << " is not below the kernel radius " << kernel_.radius();
        throw DomainError(os.str());
    }
}

GenOperator GenOperator::with_order(OrderPair order) const {
    return GenOperator(kernel_, order, a_, b_, trunc_);
}

GenOperator GenOperator::with_interval(double a, double b) const {
    return GenOperator(kernel_, order_, a, b, trunc_);
}

ConvolutionWeights series_weights(const GenOperator& op, double shift,
                                  const std::function<double(std::size_t)>& coef, double h,
                                  std::size_t intervals, double f_max) {
    const auto& trunc = op.truncation();
    const double alpha = op.order().alpha();
    const double beta = op.order().beta();
    const double span = op.b() - op.a();
    ConvolutionWeights total = ConvolutionWeights::zero(intervals);

    auto add_term = [&](std::size_t n) {
        const double c = coef(n);
        const double nu = alpha + beta * static_cast<double>(n) + shift;
        if (c != 0.0) total.add_scaled(uniform_weights(nu, h, intervals), c);
        return std::abs(c) * std::pow(span, nu) / nu * f_max;
    };

    if (const auto support = op.kernel().support()) {
        for (std::size_t n = 0; n < *support; ++n) add_term(n);
        return total;
    }
    double previous = 0.0;
    for (std::size_t n = 0; n < trunc.max_terms; ++n) {
        const double bound = add_term(n);
        if (!std::isfinite(bound)) {
            throw DivergenceError("integral_series: non-finite term bound at n = " + std::to_string(n));
        }
        if (n > 0 && bound < trunc.tail_tol && previous < trunc.tail_tol) return total;
        previous = bound;
    }
    throw TruncationError("integral_series: term bound " + std::to_string(previous) +
                              " still above tail_tol after " + std::to_string(trunc.max_terms) +
                              " terms for kernel " + op.kernel().label(),
                          previous);
}

ConvolutionWeights direct_weights(const GenOperator& op, double h, std::size_t intervals) {
    ConvolutionWeights w = uniform_weights(op.order().alpha(), h, intervals);
    const KernelEvaluator A(op.kernel(), op.order(), op.truncation());
    std::vector<double> a_values(intervals + 1);
    for (std::size_t d = 0; d <= intervals; ++d) {
        a_values[d] = A(std::pow(static_cast<double>(d) * h, op.order().beta()));
    }
    for (std::size_t d = 0; d < intervals; ++d) w.interior[d] *= a_values[d];
    for (std::size_t j = 1; j <= intervals; ++j) w.endpoint[j] *= a_values[j];
    return w;
}

SampledFunction integral_direct(const GenOperator& op, const SampledFunction& f) {
    require_matching_interval(op, f, "integral_direct");
    const ConvolutionWeights w = direct_weights(op, f.h(), f.intervals());
    return SampledFunction(f.a(), f.b(), convolve(w, f.values()));
}

SampledFunction integral_series(const GenOperator& op, const SampledFunction& f) {
    require_matching_interval(op, f, "integral_series");
    const auto coeffs = op.kernel().coefficients(
        op.order(), op.kernel().support().value_or(op.truncation().max_terms));
    const ConvolutionWeights w = series_weights(
        op, 0.0, [&](std::size_t n) { return (*coeffs)[n]; }, f.h(), f.intervals(), f.max_abs());
    return SampledFunction(f.a(), f.b(), convolve(w, f.values()));
}

double operator_norm_bound(const GenOperator& op) {
    const double span = op.b() - op.a();
    const double alpha = op.order().alpha();
    const double sup = kernel_sup_on_segment(op.kernel(), op.order(),
                                             std::pow(span, op.order().beta()), op.truncation());
    return std::pow(span, alpha) / alpha * sup;
}

namespace {

int derivative_order(const OrderPair& order) {
    return static_cast<int>(std::floor(order.alpha())) + 1;
}

GenOperator make_recip_operator(const GenOperator& base) {
    const int m = derivative_order(base.order());
    KernelSpec recip = reciprocal_kernel(base.kernel(), base.order(), m,
                                         base.truncation().max_terms);
    return GenOperator(std::move(recip),
                       OrderPair(static_cast<double>(m) - base.order().alpha(), base.order().beta()),
                       base.a(), base.b(), base.truncation());
}

}  // namespace

DerivOperator::DerivOperator(GenOperator base, DerivativeFlavor flavor)
    : base_(std::move(base)),
      m_(derivative_order(base_.order())),
      flavor_(flavor),
      recip_op_(make_recip_operator(base_)) {
    if (m_ > 3) throw DomainError("derivative: orders alpha >= 3 are not supported");
}

SampledFunction derivative(const DerivOperator& op, const SampledFunction& f) {
    if (op.flavor() == DerivativeFlavor::rl_type) {
        return finite_difference(integral_series(op.recip_operator(), f), op.m());
    }
    return integral_series(op.recip_operator(), finite_difference(f, op.m()));
}

SampledFunction compose_with_rl(const GenOperator& op, double gamma, const SampledFunction& f,
                                Side side) {
    if (!(gamma > 0.0)) throw DomainError("compose_with_rl: gamma must be positive");
    if (side == Side::left) return rl_integral_quad(integral_series(op, f), gamma);
    return integral_series(op, rl_integral_quad(f, gamma));
}

}  // namespace genfrac
