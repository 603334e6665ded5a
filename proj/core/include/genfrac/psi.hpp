#pragma once

/**
 * @file psi.hpp
 * @brief Operators taken with respect to an increasing C^1 function psi,
 *
 *     I_psi f(t) = int_a^t psi'(tau) (psi(t) - psi(tau))^(alpha-1) A((psi(t) - psi(tau))^beta) f(tau) dtau,
 *
 * with the Hadamard (psi = log), Katugampola (psi = t^(rho+1)) and
 * Erdelyi-Kober (psi = t^sigma) integrals as special cases.
 */

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "genfrac/operator.hpp"
#include "genfrac/sampled.hpp"

namespace genfrac {

class PsiFunction {
public:
    enum class Kind { identity, log, power_shifted, power, custom };

    static PsiFunction identity();
    static PsiFunction log();
    /// t^(rho+1), rho > -1.
    static PsiFunction power_shifted(double rho);
    /// t^sigma, sigma > 0.
    static PsiFunction power(double sigma);
    static PsiFunction custom(std::function<double(double)> psi, std::function<double(double)> dpsi,
                              std::string label = "custom");

    Kind kind() const noexcept { return kind_; }
    double parameter() const noexcept { return param_; }
    const std::string& label() const noexcept { return label_; }

    double operator()(double t) const { return psi_(t); }
    double derivative(double t) const { return dpsi_(t); }

    /// Throws DomainError unless psi is strictly increasing with finite
    /// positive psi' on every node of the grid (t = 0 is exempt for the
    /// power variants), and a lies in the domain of the variant.
    void validate_on(const SampledFunction& grid) const;

private:
    PsiFunction(Kind kind, double param, std::string label, std::function<double(double)> psi,
                std::function<double(double)> dpsi);

    Kind kind_;
    double param_;
    std::string label_;
    std::function<double(double)> psi_;
    std::function<double(double)> dpsi_;
};

/// `identity`, `log`, `power:rho=R` or `powsigma:sigma=S`.
PsiFunction parse_psi_spec(std::string_view text);

/// Substitution u = psi(tau): f o psi^{-1} is resampled on a uniform u-grid
/// by monotone cubic (PCHIP) interpolation and the operator is applied there
/// by product integration. psi = identity delegates to integral_direct.
SampledFunction psi_integral(const GenOperator& op, const PsiFunction& psi, const SampledFunction& f);

/// Independent path: product integration directly on the non-uniform nodes psi(t_i).
SampledFunction psi_integral_nodal(const GenOperator& op, const PsiFunction& psi,
                                   const SampledFunction& f);

/// (1/Gamma(alpha)) int_a^t (1/tau) (log(t/tau))^(alpha-1) f(tau) dtau, a > 0.
SampledFunction hadamard_integral(double alpha, const SampledFunction& f);

/// (rho+1)^(1-alpha)/Gamma(alpha) int_a^t tau^rho (t^(rho+1) - tau^(rho+1))^(alpha-1) f(tau) dtau, a >= 0.
SampledFunction katugampola_integral(double alpha, double rho, const SampledFunction& f);

/// t^(-sigma(alpha+eta)) sigma/Gamma(alpha) int_0^t (t^sigma - tau^sigma)^(alpha-1) tau^(sigma eta + sigma - 1) f(tau) dtau.
/// Requires a = 0 and eta >= 0; the node t = 0 is excluded from the output.
SampledFunction erdelyi_kober_integral(double alpha, double sigma, double eta, const SampledFunction& f);

/// Leibniz series with psi-derivatives: g_psi_derivs[m] = ((1/psi') d/dt)^m g on the grid.
/// psi = identity delegates to leibniz_series.
SampledFunction psi_leibniz_series(const GenOperator& op, const PsiFunction& psi, const SampledFunction& f,
                                   const std::vector<SampledFunction>& g_psi_derivs, int M);

}  // namespace genfrac
