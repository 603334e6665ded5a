#include "genfrac/special.hpp"

#include <cmath>
#include <string>

#include "genfrac/errors.hpp"

namespace genfrac {
namespace {

// Largest argument for which tgamma stays finite in double precision.
constexpr double kGammaOverflow = 171.0;

double gamma_sign(double x) {
    if (x > 0.0) return 1.0;
    return (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1.0 : -1.0;
}

double log_abs_gamma(double x) {
    return std::lgamma(x);
}

}  // namespace

bool is_gamma_pole(double x) noexcept {
    return x <= 0.0 && x == std::floor(x);
}

double gamma(double x) {
    if (is_gamma_pole(x)) {
        throw DomainError("gamma: pole at non-positive integer " + std::to_string(x));
    }
    return std::tgamma(x);
}

double rgamma(double x) {
    if (is_gamma_pole(x)) return 0.0;
    if (x < kGammaOverflow) return 1.0 / std::tgamma(x);
    return std::exp(-log_abs_gamma(x));
}

double gamma_ratio(double x, double y) {
    if (x == y) {
        if (is_gamma_pole(x)) throw DomainError("gamma_ratio: pole in numerator");
        return 1.0;
    }
    if (is_gamma_pole(x)) {
        throw DomainError("gamma_ratio: pole in numerator at " + std::to_string(x));
    }
    if (is_gamma_pole(y)) return 0.0;
    if (std::abs(x) < kGammaOverflow && std::abs(y) < kGammaOverflow) {
        return std::tgamma(x) / std::tgamma(y);
    }
    return gamma_sign(x) * gamma_sign(y) * std::exp(log_abs_gamma(x) - log_abs_gamma(y));
}

double binomial(double x, std::size_t m) {
    double result = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double factor = x - static_cast<double>(i);
        if (factor == 0.0) return 0.0;
        result *= factor / static_cast<double>(i + 1);
    }
    return result;
}

double rising_over_factorial(double rho, std::size_t n) {
    double result = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        result *= (rho + static_cast<double>(k)) / static_cast<double>(k + 1);
    }
    return result;
}

}  // namespace genfrac
