#include "genfrac/rl_oracle.hpp"

#include <cmath>
#include <string>

#include "genfrac/errors.hpp"
#include "genfrac/product_weights.hpp"
#include "genfrac/special.hpp"

namespace genfrac {

double rl_integral_power(double alpha, double mu, double a, double t) {
    if (!(alpha > 0.0)) throw DomainError("rl_integral_power: alpha must be positive");
    if (!(mu > -1.0)) throw DomainError("rl_integral_power: mu must exceed -1");
    if (t < a) throw DomainError("rl_integral_power: t must not precede a");
    return gamma_ratio(mu + 1.0, mu + alpha + 1.0) * std::pow(t - a, mu + alpha);
}

double rl_derivative_power(double alpha, double mu, double a, double t) {
    if (!(alpha >= 0.0)) throw DomainError("rl_derivative_power: alpha must be non-negative");
    if (!(mu > -1.0)) throw DomainError("rl_derivative_power: mu must exceed -1");
    if (t < a) throw DomainError("rl_derivative_power: t must not precede a");
    const double r = gamma_ratio(mu + 1.0, mu + 1.0 - alpha);
    return r == 0.0 ? 0.0 : r * std::pow(t - a, mu - alpha);
}

SampledFunction rl_integral_quad(const SampledFunction& f, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("rl_integral_quad: alpha must be positive");
    if (f.first_node() != 0) throw DomainError("rl_integral_quad: f has no value at t = a");
    ConvolutionWeights w = uniform_weights(alpha, f.h(), f.intervals());
    w.scale(rgamma(alpha));
    return SampledFunction(f.a(), f.b(), convolve(w, f.values()));
}

SampledFunction finite_difference(const SampledFunction& f, int m) {
    if (m < 0 || m > 3) throw DomainError("finite_difference: order must lie in 0..3");
    if (m == 0) return f;
    const std::size_t n = f.intervals();
    if (n < static_cast<std::size_t>(2 * m + 2)) {
        throw DomainError("grid too coarse: " + std::to_string(n) + " intervals, need at least " +
                          std::to_string(2 * m + 2) + " for derivative order " + std::to_string(m));
    }
    if (f.first_node() != 0) throw DomainError("finite_difference: f has no value at t = a");
    const auto& g = f.values();
    const double h = f.h();
    std::vector<double> d(n + 1);
    switch (m) {
        case 1:
            d[0] = (-3.0 * g[0] + 4.0 * g[1] - g[2]) / (2.0 * h);
            for (std::size_t j = 1; j < n; ++j) d[j] = (g[j + 1] - g[j - 1]) / (2.0 * h);
            d[n] = (3.0 * g[n] - 4.0 * g[n - 1] + g[n - 2]) / (2.0 * h);
            break;
        case 2: {
            const double h2 = h * h;
            d[0] = (2.0 * g[0] - 5.0 * g[1] + 4.0 * g[2] - g[3]) / h2;
            for (std::size_t j = 1; j < n; ++j) d[j] = (g[j + 1] - 2.0 * g[j] + g[j - 1]) / h2;
            d[n] = (2.0 * g[n] - 5.0 * g[n - 1] + 4.0 * g[n - 2] - g[n - 3]) / h2;
            break;
        }
        case 3: {
            const double h3 = 2.0 * h * h * h;
            auto forward = [&](std::size_t j) {
                return (-5.0 * g[j] + 18.0 * g[j + 1] - 24.0 * g[j + 2] + 14.0 * g[j + 3] -
                        3.0 * g[j + 4]) / h3;
            };
            auto backward = [&](std::size_t j) {
                return (5.0 * g[j] - 18.0 * g[j - 1] + 24.0 * g[j - 2] - 14.0 * g[j - 3] +
                        3.0 * g[j - 4]) / h3;
            };
            d[0] = forward(0);
            d[1] = forward(1);
            for (std::size_t j = 2; j + 2 <= n; ++j) {
                d[j] = (g[j + 2] - 2.0 * g[j + 1] + 2.0 * g[j - 1] - g[j - 2]) / h3;
            }
            d[n - 1] = backward(n - 1);
            d[n] = backward(n);
            break;
        }
    }
    return SampledFunction(f.a(), f.b(), std::move(d));
}

SampledFunction rl_derivative_quad(const SampledFunction& f, double alpha) {
    if (!(alpha >= 0.0)) throw DomainError("rl_derivative_quad: alpha must be non-negative");
    const int m = static_cast<int>(std::floor(alpha)) + 1;
    if (m > 3) throw DomainError("rl_derivative_quad: orders alpha >= 3 are not supported");
    if (f.intervals() < static_cast<std::size_t>(2 * m + 2)) {
        throw DomainError("grid too coarse: " + std::to_string(f.intervals()) +
                          " intervals, need at least " + std::to_string(2 * m + 2));
    }
    return finite_difference(rl_integral_quad(f, static_cast<double>(m) - alpha), m);
}

}  // namespace genfrac
