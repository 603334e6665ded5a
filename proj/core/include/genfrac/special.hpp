#pragma once

#include <cstddef>

namespace genfrac {

/// Gamma function on the real line. Negative non-integer arguments are
/// handled through reflection; non-positive integers throw DomainError.
double gamma(double x);

/// 1/Gamma(x), entire: returns exactly 0 at the poles of Gamma.
double rgamma(double x);

/// Gamma(x)/Gamma(y) without intermediate overflow. Returns exactly 1 when
/// x == y. A pole in the denominator gives 0; a pole in the numerator throws.
double gamma_ratio(double x, double y);

/// Generalised binomial coefficient C(x, m) = x (x-1) ... (x-m+1) / m!.
/// Exactly zero when x is a non-negative integer smaller than m.
double binomial(double x, std::size_t m);

/// Rising factorial divided by n!: (rho)_n / n!.
double rising_over_factorial(double rho, std::size_t n);

/// True when x is a non-positive integer (a pole of Gamma).
bool is_gamma_pole(double x) noexcept;

}  // namespace genfrac
