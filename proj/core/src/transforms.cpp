#include "genfrac/transforms.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "genfrac/errors.hpp"
#include "genfrac/special.hpp"

namespace genfrac {

namespace {

std::complex<double> symbol_at(const KernelSpec& kernel, const OrderPair& order,
                               std::complex<double> s, const TruncationPolicy& trunc) {
    const std::complex<double> x = std::pow(s, -order.beta());
    std::complex<double> multiplier;
    try {
        multiplier = eval_A_gamma(kernel, order, x, trunc);
    } catch (const NumericalError& series_failure) {
        const auto closed = kernel.gamma_transform_closed_form(order, x);
        if (!closed) {
            std::ostringstream os;
            os << "symbol: A_Gamma series fails at s^{-beta} = " << x << " for kernel "
               << kernel.label() << " (" << series_failure.what()
               << "); no closed form is known, try a point with larger Re(s)";
            throw OutOfRegionError(os.str());
        }
        multiplier = *closed;
    }
    return std::pow(s, -order.alpha()) * multiplier;
}

}  // namespace

std::complex<double> laplace_symbol(const KernelSpec& kernel, const OrderPair& order,
                                    std::complex<double> s, const TruncationPolicy& trunc) {
    if (s.real() < 0.0 || s == 0.0 || !std::isfinite(s.real()) || !std::isfinite(s.imag())) {
        throw DomainError("laplace_symbol: need Re(s) >= 0 and s != 0");
    }
    return symbol_at(kernel, order, s, trunc);
}

std::complex<double> fourier_symbol(const KernelSpec& kernel, const OrderPair& order, double k,
                                    const TruncationPolicy& trunc) {
    if (k == 0.0 || !std::isfinite(k)) throw DomainError("fourier_symbol: k must be real and nonzero");
    return symbol_at(kernel, order, std::complex<double>(0.0, -k), trunc);
}

double laplace_transform(const ClosedFormFunction& f, double s) {
    if (f.reference() != 0.0) throw DomainError("laplace_transform: reference point must be 0");
    if (!(s > 0.0)) throw DomainError("laplace_transform: s must be positive");
    switch (f.kind()) {
        case ClosedFormFunction::Kind::constant:
            return f.parameter() / s;
        case ClosedFormFunction::Kind::power:
            return gamma(f.parameter() + 1.0) / std::pow(s, f.parameter() + 1.0);
        case ClosedFormFunction::Kind::exponential:
            if (!(s > f.parameter())) throw DomainError("laplace_transform: need s > k for e^{kt}");
            return 1.0 / (s - f.parameter());
        case ClosedFormFunction::Kind::polynomial: {
            double sum = 0.0;
            double factorial = 1.0;
            const auto& c = f.coefficients();
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i > 0) factorial *= static_cast<double>(i);
                sum += c[i] * factorial / std::pow(s, static_cast<double>(i) + 1.0);
            }
            return sum;
        }
    }
    return 0.0;
}

LaplaceCheck laplace_numeric_check(const GenOperator& op, const ClosedFormFunction& f, double s,
                                   double T, std::size_t intervals) {
    if (op.a() != 0.0) throw DomainError("laplace_numeric_check: operator must start at a = 0");
    if (!(s > 0.0)) throw DomainError("laplace_numeric_check: s must be positive");
    if (!(T > 0.0)) throw DomainError("laplace_numeric_check: horizon must be positive");
    const GenOperator on_horizon = op.with_interval(0.0, T);
    const SampledFunction fs = f.sample(T, intervals);
    const SampledFunction g = integral_series(on_horizon, fs);

    LaplaceCheck result;
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double w = (i == 0 || i + 1 == g.size()) ? 0.5 : 1.0;
        sum += w * std::exp(-s * g.node(i)) * g[i];
    }
    result.numeric = sum * g.h();
    const std::complex<double> symbol = laplace_symbol(op.kernel(), op.order(), s, op.truncation());
    result.predicted = symbol.real() * laplace_transform(f, s);
    result.tail = std::exp(-s * T);
    result.horizon_warning = result.tail > 1e-6;
    return result;
}

LinearSolveResult solve_linear_integral_eq(const GenOperator& op, double c, const SampledFunction& g,
                                           double tol, std::size_t max_iter) {
    if (c == 0.0 || !std::isfinite(c)) throw DomainError("solve_linear_integral_eq: c must be nonzero");
    if (!(tol > 0.0)) throw DomainError("solve_linear_integral_eq: tol must be positive");
    if (max_iter == 0) throw DomainError("solve_linear_integral_eq: max_iter must be positive");

    auto step = [&](const SampledFunction& f) {
        const SampledFunction If = integral_series(op, f);
        std::vector<double> next(g.size());
        for (std::size_t i = 0; i < next.size(); ++i) next[i] = (g[i] - If[i]) / c;
        return SampledFunction(g.a(), g.b(), std::move(next));
    };

    std::vector<double> start(g.size());
    for (std::size_t i = 0; i < start.size(); ++i) start[i] = g[i] / c;
    SampledFunction current(g.a(), g.b(), std::move(start));

    LinearSolveResult result{current, 0.0, {}, operator_norm_bound(op) / std::abs(c), 0};
    std::size_t growth = 0;
    double diff = 0.0;
    for (std::size_t k = 1; k <= max_iter; ++k) {
        SampledFunction next = step(current);
        diff = max_abs_diff(next, current);
        result.difference_norms.push_back(diff);
        current = std::move(next);
        result.iterations = k;
        if (diff < tol) {
            const SampledFunction If = integral_series(op, current);
            double residual = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) {
                residual = std::max(residual, std::abs(If[i] + c * current[i] - g[i]));
            }
            result.solution = current;
            result.residual = residual;
            return result;
        }
        const auto& norms = result.difference_norms;
        growth = (norms.size() >= 2 && norms[norms.size() - 1] > norms[norms.size() - 2]) ? growth + 1 : 0;
        if (growth >= 5) {
            throw ConvergenceError("solve_linear_integral_eq: iteration is not contracting, successive "
                                   "differences grew over 5 steps (last " +
                                       std::to_string(diff) + ")",
                                   diff);
        }
    }
    throw ConvergenceError("solve_linear_integral_eq: iteration limit " + std::to_string(max_iter) +
                               " reached, last difference " + std::to_string(diff),
                           diff);
}

}  // namespace genfrac
