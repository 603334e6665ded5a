#pragma once

/**
 * @file kernel.hpp
 * @brief Analytic kernels A(x) = sum a_n(alpha, beta) x^n and their algebra.
 *
 * A kernel is a coefficient rule n -> a_n(alpha, beta) together with the
 * radius of convergence of the power series. The generalised operator
 *
 *     I[A; alpha, beta] f(t) = int_a^t (t - tau)^(alpha-1) A((t - tau)^beta) f(tau) dtau
 *
 * only ever sees the kernel through this rule, so every catalog model (RL,
 * Prabhakar, AB, GPF, Mittag-Leffler) and every user-supplied coefficient
 * list goes through the same code path.
 *
 * Two series are attached to a kernel at a fixed order pair:
 *
 *     A(x)       = sum a_n x^n
 *     A_Gamma(x) = sum a_n Gamma(beta n + alpha) x^n
 *
 * The second one is the multiplier that appears in the series-of-RL-integrals
 * form of the operator and in its Laplace symbol.
 */

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace genfrac {

/// Real order parameters with alpha > 0 and beta >= 0.
class OrderPair {
public:
    OrderPair(double alpha, double beta);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

    friend bool operator==(const OrderPair&, const OrderPair&) = default;

private:
    double alpha_;
    double beta_;
};

/// Governs every infinite series in the library.
struct TruncationPolicy {
    std::size_t max_terms = 64;
    double tail_tol = 1e-12;

    /// Throws DomainError when max_terms == 0 or tail_tol <= 0.
    void validate() const;
};

enum class KernelFamily { rl, prabhakar, ab, gpf, ml, explicit_list };

std::string_view to_string(KernelFamily family) noexcept;

using KernelParamValue = std::variant<double, std::vector<double>>;
using KernelParams = std::map<std::string, KernelParamValue, std::less<>>;

class KernelSpec {
public:
    using CoefficientRule = std::function<double(std::size_t, const OrderPair&)>;
    /// Closed-form continuation of A_Gamma, when one is known for the given
    /// order pair. Returns nullopt when no closed form applies.
    using GammaClosedForm =
        std::function<std::optional<std::complex<double>>(const OrderPair&, std::complex<double>)>;

    KernelSpec(KernelFamily family, std::string label, CoefficientRule rule, double radius,
               std::optional<std::size_t> support = std::nullopt, GammaClosedForm closed_form = {});

    /// a_n(alpha, beta). Throws DomainError when the rule yields a non-finite value.
    double coefficient(std::size_t n, const OrderPair& order) const;

    /// a_0 .. a_{count-1} at the given order. Memoized per order pair; the
    /// returned vector is immutable and may be longer than requested.
    std::shared_ptr<const std::vector<double>> coefficients(const OrderPair& order,
                                                            std::size_t count) const;

    KernelFamily family() const noexcept { return family_; }
    const std::string& label() const noexcept { return label_; }
    double radius() const noexcept { return radius_; }

    /// Number of leading coefficients that may be non-zero, for polynomial
    /// kernels (rl, explicit lists). nullopt for genuinely infinite series.
    std::optional<std::size_t> support() const noexcept { return support_; }

    std::optional<std::complex<double>> gamma_transform_closed_form(const OrderPair& order,
                                                                    std::complex<double> x) const;

private:
    struct Cache;

    KernelFamily family_;
    std::string label_;
    CoefficientRule rule_;
    double radius_;
    std::optional<std::size_t> support_;
    GammaClosedForm closed_form_;
    std::shared_ptr<Cache> cache_;
};

/// Builds a catalog kernel.
///
///   rl         no parameters; a_0 = 1/Gamma(alpha), a_n = 0 otherwise
///   prabhakar  rho, omega;    A(x) = E^rho_{beta,alpha}(omega x)
///   ab         B (default 1); A(x) = B/(1-beta) E_beta(-beta x/(1-beta)), beta in (0,1)
///   gpf        rho in (0,1];  A(x) = exp((rho-1)x/rho) / (rho^alpha Gamma(alpha))
///   ml         beta, alpha, rho (default 1); bare E^rho_{beta,alpha}(x)
///   explicit   coeffs (list), radius (default infinite)
KernelSpec make_kernel(KernelFamily family, const KernelParams& params = {});

/// Parses `name` or `name:key=value,key=[v0,v1],...`.
/// Throws ParseError carrying the offending position.
KernelSpec parse_kernel_spec(std::string_view text);

/// A(x), truncated according to the policy.
double eval_A(const KernelSpec& kernel, const OrderPair& order, double x,
              const TruncationPolicy& trunc = {});
std::complex<double> eval_A(const KernelSpec& kernel, const OrderPair& order,
                            std::complex<double> x, const TruncationPolicy& trunc = {});

/// A(x) at one order pair for repeated real evaluation, with the
/// coefficients fetched once.
class KernelEvaluator {
public:
    KernelEvaluator(const KernelSpec& kernel, const OrderPair& order, const TruncationPolicy& trunc = {});

    double operator()(double x) const;

private:
    KernelSpec kernel_;
    TruncationPolicy trunc_;
    std::shared_ptr<const std::vector<double>> coeffs_;
};

/// A_Gamma(x) = sum a_n Gamma(beta n + alpha) x^n. Eight consecutive strictly
/// growing term magnitudes are reported as DivergenceError.
double eval_A_gamma(const KernelSpec& kernel, const OrderPair& order, double x,
                    const TruncationPolicy& trunc = {});
std::complex<double> eval_A_gamma(const KernelSpec& kernel, const OrderPair& order,
                                  std::complex<double> x, const TruncationPolicy& trunc = {});

/// a_n(alpha, beta) Gamma(beta n + alpha), overflow-safe.
double gamma_weighted_coefficient(const KernelSpec& kernel, const OrderPair& order, std::size_t n);

/// Coefficients of the kernel whose A_Gamma at orders (m - alpha, beta) is the
/// formal reciprocal of A_Gamma at (alpha, beta). Returned as an explicit
/// list of n_terms coefficients, to be used at orders (m - alpha, beta).
KernelSpec reciprocal_kernel(const KernelSpec& kernel, const OrderPair& order, int m,
                             std::size_t n_terms);

/// |sum_{i+j=k} abar_i Gamma(beta i + m - alpha) a_j Gamma(beta j + alpha) - delta_{k0}|
/// for k = 0..k_max, abar the reciprocal kernel with k_max + 1 terms.
std::vector<double> reciprocal_identity_residual(const KernelSpec& kernel, const OrderPair& order, int m,
                                                 std::size_t k_max);

/// |sum_{n+m=k} a_n(a1,b) a_m(a2,b) Gamma(bn+a1) Gamma(bm+a2) - a_k(a1+a2,b) Gamma(bk+a1+a2)|
/// for k = 0..k_max.
std::vector<double> semigroup_residual(const KernelSpec& kernel, double alpha1, double alpha2,
                                       double beta, std::size_t k_max);

/// sup |A(x)| over the real segment [0, x_max], the range the operator
/// actually evaluates A on for real orders.
double kernel_sup_on_segment(const KernelSpec& kernel, const OrderPair& order, double x_max,
                             const TruncationPolicy& trunc = {});

}  // namespace genfrac
