#include "genfrac/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <utility>

#include "genfrac/errors.hpp"
#include "genfrac/special.hpp"

namespace genfrac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Number of consecutive strictly growing term magnitudes taken as divergence.
constexpr std::size_t kGrowthWindow = 8;

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

double require_scalar(const KernelParams& params, std::string_view key, std::string_view family) {
    auto it = params.find(key);
    if (it == params.end()) {
        throw DomainError(std::string(family) + " kernel: missing parameter '" + std::string(key) + "'");
    }
    if (const double* v = std::get_if<double>(&it->second)) return *v;
    throw DomainError(std::string(family) + " kernel: parameter '" + std::string(key) + "' must be a number");
}

double optional_scalar(const KernelParams& params, std::string_view key, double fallback,
                       std::string_view family) {
    if (params.find(key) == params.end()) return fallback;
    return require_scalar(params, key, family);
}

void reject_unknown(const KernelParams& params, std::initializer_list<std::string_view> allowed,
                    std::string_view family) {
    for (const auto& [key, value] : params) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw DomainError(std::string(family) + " kernel: unknown parameter '" + key + "'");
        }
    }
}

// (1 - z)^(-p) on the principal branch; nullopt at the branch point.
std::optional<std::complex<double>> binomial_series_sum(std::complex<double> z, double p) {
    const std::complex<double> base = 1.0 - z;
    if (base == 0.0) return std::nullopt;
    return std::pow(base, -p);
}

KernelSpec make_rl() {
    auto rule = [](std::size_t n, const OrderPair& order) {
        return n == 0 ? rgamma(order.alpha()) : 0.0;
    };
    auto closed = [](const OrderPair&, std::complex<double>) -> std::optional<std::complex<double>> {
        return std::complex<double>(1.0, 0.0);
    };
    return KernelSpec(KernelFamily::rl, "rl", rule, kInf, 1, closed);
}

KernelSpec make_prabhakar(const KernelParams& params) {
    reject_unknown(params, {"rho", "omega"}, "prabhakar");
    const double rho = require_scalar(params, "rho", "prabhakar");
    const double omega = require_scalar(params, "omega", "prabhakar");
    if (is_gamma_pole(rho)) {
        throw DomainError("prabhakar kernel: rho = " + format_number(rho) +
                          " is a pole of Gamma(rho)");
    }
    auto rule = [rho, omega](std::size_t n, const OrderPair& order) {
        const double nd = static_cast<double>(n);
        return rising_over_factorial(rho, n) * std::pow(omega, nd) *
               rgamma(order.beta() * nd + order.alpha());
    };
    auto closed = [rho, omega](const OrderPair&, std::complex<double> x) {
        return binomial_series_sum(omega * x, rho);
    };
    return KernelSpec(KernelFamily::prabhakar,
                      "prabhakar:rho=" + format_number(rho) + ",omega=" + format_number(omega),
                      rule, kInf, std::nullopt, closed);
}

KernelSpec make_ab(const KernelParams& params) {
    reject_unknown(params, {"B"}, "ab");
    const double b_value = optional_scalar(params, "B", 1.0, "ab");
    if (!std::isfinite(b_value)) throw DomainError("ab kernel: B must be finite");
    // The Mittag-Leffler order of the AB kernel is the power applied to
    // (t - tau) inside A, i.e. the operator's beta.
    auto rule = [b_value](std::size_t n, const OrderPair& order) {
        const double nu = order.beta();
        if (!(nu > 0.0 && nu < 1.0)) {
            throw DomainError("ab kernel: fractional order beta = " + format_number(nu) +
                              " must lie in (0, 1)");
        }
        const double nd = static_cast<double>(n);
        return b_value / (1.0 - nu) * std::pow(-nu / (1.0 - nu), nd) * rgamma(nu * nd + 1.0);
    };
    auto closed = [b_value](const OrderPair& order,
                            std::complex<double> x) -> std::optional<std::complex<double>> {
        if (order.alpha() != 1.0) return std::nullopt;
        const double nu = order.beta();
        const std::complex<double> denom = 1.0 - nu + nu * x;
        if (denom == 0.0) return std::nullopt;
        return b_value / denom;
    };
    return KernelSpec(KernelFamily::ab, "ab:B=" + format_number(b_value), rule, kInf, std::nullopt,
                      closed);
}

KernelSpec make_gpf(const KernelParams& params) {
    reject_unknown(params, {"rho"}, "gpf");
    const double rho = require_scalar(params, "rho", "gpf");
    if (!(rho > 0.0 && rho <= 1.0)) {
        throw DomainError("gpf kernel: rho = " + format_number(rho) + " must lie in (0, 1]");
    }
    const double c = (rho - 1.0) / rho;
    auto rule = [rho, c](std::size_t n, const OrderPair& order) {
        const double nd = static_cast<double>(n);
        return std::pow(c, nd) * rgamma(nd + 1.0) / (std::pow(rho, order.alpha()) * gamma(order.alpha()));
    };
    auto closed = [rho, c](const OrderPair& order,
                           std::complex<double> x) -> std::optional<std::complex<double>> {
        if (order.beta() != 1.0) return std::nullopt;
        auto s = binomial_series_sum(c * x, order.alpha());
        if (!s) return std::nullopt;
        return std::pow(rho, -order.alpha()) * *s;
    };
    return KernelSpec(KernelFamily::gpf, "gpf:rho=" + format_number(rho), rule, kInf,
                      std::nullopt, closed);
}

KernelSpec make_ml(const KernelParams& params) {
    reject_unknown(params, {"beta", "alpha", "rho"}, "ml");
    const double beta_ml = require_scalar(params, "beta", "ml");
    const double alpha_ml = require_scalar(params, "alpha", "ml");
    const double rho = optional_scalar(params, "rho", 1.0, "ml");
    if (is_gamma_pole(rho)) {
        throw DomainError("ml kernel: rho = " + format_number(rho) + " is a pole of Gamma(rho)");
    }
    if (!(beta_ml > 0.0)) throw DomainError("ml kernel: beta must be positive");
    auto rule = [beta_ml, alpha_ml, rho](std::size_t n, const OrderPair&) {
        const double nd = static_cast<double>(n);
        return rising_over_factorial(rho, n) * rgamma(beta_ml * nd + alpha_ml);
    };
    auto closed = [beta_ml, alpha_ml, rho](const OrderPair& order, std::complex<double> x)
        -> std::optional<std::complex<double>> {
        if (order.beta() != beta_ml || order.alpha() != alpha_ml) return std::nullopt;
        return binomial_series_sum(x, rho);
    };
    return KernelSpec(KernelFamily::ml,
                      "ml:beta=" + format_number(beta_ml) + ",alpha=" + format_number(alpha_ml) +
                          ",rho=" + format_number(rho),
                      rule, kInf, std::nullopt, closed);
}

KernelSpec make_explicit(const KernelParams& params) {
    reject_unknown(params, {"coeffs", "radius"}, "explicit");
    auto it = params.find("coeffs");
    if (it == params.end()) throw DomainError("explicit kernel: missing parameter 'coeffs'");
    const auto* list = std::get_if<std::vector<double>>(&it->second);
    if (list == nullptr) throw DomainError("explicit kernel: 'coeffs' must be a list");
    if (list->empty()) throw DomainError("explicit kernel: 'coeffs' must not be empty");
    for (double c : *list) {
        if (!std::isfinite(c)) throw DomainError("explicit kernel: non-finite coefficient");
    }
    const double radius = optional_scalar(params, "radius", kInf, "explicit");
    if (!(radius > 0.0)) throw DomainError("explicit kernel: radius must be positive");

    auto coeffs = std::make_shared<const std::vector<double>>(*list);
    auto rule = [coeffs](std::size_t n, const OrderPair&) {
        return n < coeffs->size() ? (*coeffs)[n] : 0.0;
    };
    std::ostringstream label;
    label << "explicit:coeffs=[";
    for (std::size_t i = 0; i < coeffs->size(); ++i) {
        if (i) label << ',';
        label << format_number((*coeffs)[i]);
    }
    label << ']';
    if (std::isfinite(radius)) label << ",radius=" << format_number(radius);
    return KernelSpec(KernelFamily::explicit_list, label.str(), rule, radius, coeffs->size());
}

template <class T>
double magnitude(const T& v) {
    return std::abs(v);
}

// Sums c_0 + c_1 x + c_2 x^2 + ... under the policy.
//   finite support: every coefficient below the support is summed;
//   otherwise: stop once two consecutive terms fall below tail_tol.
template <class T, class Coeff>
T sum_series(Coeff&& coeff, std::optional<std::size_t> support, T x,
             const TruncationPolicy& trunc, bool detect_growth, std::string_view op_name,
             const KernelSpec& kernel) {
    auto what = [&] { return std::string(op_name) + "(" + kernel.label() + ")"; };
    T sum{0.0};
    T power{1.0};
    if (support) {
        for (std::size_t n = 0; n < *support; ++n) {
            sum += coeff(n) * power;
            power *= x;
        }
        return sum;
    }
    double previous = kInf;
    std::size_t growth_run = 1;
    for (std::size_t n = 0; n < trunc.max_terms; ++n) {
        const T term = coeff(n) * power;
        sum += term;
        const double mag = magnitude(term);
        if (!std::isfinite(mag)) {
            throw DivergenceError(what() + ": non-finite term at n = " + std::to_string(n));
        }
        if (detect_growth) {
            growth_run = (n > 0 && mag > previous) ? growth_run + 1 : 1;
            if (growth_run >= kGrowthWindow) {
                throw DivergenceError(what() + ": terms grow over " + std::to_string(kGrowthWindow) +
                                      " consecutive terms (n = " + std::to_string(n) + ")");
            }
        }
        if (n > 0 && mag < trunc.tail_tol && previous < trunc.tail_tol) return sum;
        previous = mag;
        power *= x;
    }
    throw TruncationError(what() + ": series did not reach tail tolerance within " +
                              std::to_string(trunc.max_terms) + " terms (last term " +
                              format_number(previous) + ")",
                          previous);
}

template <class T>
T eval_A_impl(const KernelSpec& kernel, const OrderPair& order, T x, const TruncationPolicy& trunc) {
    trunc.validate();
    if (magnitude(x) >= kernel.radius()) {
        throw DivergenceError("eval_A: |x| = " + format_number(magnitude(x)) +
                              " is outside the radius of convergence " +
                              format_number(kernel.radius()) + " of kernel " + kernel.label());
    }
    const std::size_t count = kernel.support().value_or(trunc.max_terms);
    auto coeffs = kernel.coefficients(order, count);
    return sum_series<T>([&](std::size_t n) { return (*coeffs)[n]; }, kernel.support(), x, trunc,
                         false, "eval_A", kernel);
}

template <class T>
T eval_A_gamma_impl(const KernelSpec& kernel, const OrderPair& order, T x,
                    const TruncationPolicy& trunc) {
    trunc.validate();
    if (magnitude(x) >= kernel.radius()) {
        throw DivergenceError("eval_A_gamma: |x| = " + format_number(magnitude(x)) +
                              " is outside the radius of convergence of kernel " + kernel.label());
    }
    return sum_series<T>(
        [&](std::size_t n) { return gamma_weighted_coefficient(kernel, order, n); },
        kernel.support(), x, trunc, true, "eval_A_gamma", kernel);
}

}  // namespace

OrderPair::OrderPair(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError("order alpha = " + format_number(alpha) + " must be positive");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw DomainError("order beta = " + format_number(beta) + " must be non-negative");
    }
}

void TruncationPolicy::validate() const {
    if (max_terms == 0) throw DomainError("truncation policy: max_terms must be positive");
    if (!(tail_tol > 0.0)) throw DomainError("truncation policy: tail_tol must be positive");
}

std::string_view to_string(KernelFamily family) noexcept {
    switch (family) {
        case KernelFamily::rl: return "rl";
        case KernelFamily::prabhakar: return "prabhakar";
        case KernelFamily::ab: return "ab";
        case KernelFamily::gpf: return "gpf";
        case KernelFamily::ml: return "ml";
        case KernelFamily::explicit_list: return "explicit";
    }
    return "unknown";
}

struct KernelSpec::Cache {
    std::mutex mutex;
    std::map<std::pair<double, double>, std::shared_ptr<const std::vector<double>>> entries;
};

KernelSpec::KernelSpec(KernelFamily family, std::string label, CoefficientRule rule, double radius,
                       std::optional<std::size_t> support, GammaClosedForm closed_form)
    : family_(family),
      label_(std::move(label)),
      rule_(std::move(rule)),
      radius_(radius),
      support_(support),
      closed_form_(std::move(closed_form)),
      cache_(std::make_shared<Cache>()) {
    if (!(radius_ > 0.0)) throw DomainError("kernel radius must be positive");
}

double KernelSpec::coefficient(std::size_t n, const OrderPair& order) const {
    if (support_ && n >= *support_) return 0.0;
    const double value = rule_(n, order);
    if (!std::isfinite(value)) {
        throw DomainError("kernel " + label_ + ": coefficient a_" + std::to_string(n) +
                          " is not finite");
    }
    return value;
}

std::shared_ptr<const std::vector<double>> KernelSpec::coefficients(const OrderPair& order,
                                                                    std::size_t count) const {
    const auto key = std::make_pair(order.alpha(), order.beta());
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->entries.find(key);
        if (it != cache_->entries.end() && it->second->size() >= count) return it->second;
    }
    auto fresh = std::make_shared<std::vector<double>>(count);
    for (std::size_t n = 0; n < count; ++n) (*fresh)[n] = coefficient(n, order);
    std::shared_ptr<const std::vector<double>> result = std::move(fresh);
    std::lock_guard lock(cache_->mutex);
    auto& slot = cache_->entries[key];
    if (!slot || slot->size() < result->size()) slot = result;
    return slot;
}

std::optional<std::complex<double>> KernelSpec::gamma_transform_closed_form(
    const OrderPair& order, std::complex<double> x) const {
    if (!closed_form_) return std::nullopt;
    return closed_form_(order, x);
}

KernelSpec make_kernel(KernelFamily family, const KernelParams& params) {
    switch (family) {
        case KernelFamily::rl:
            reject_unknown(params, {}, "rl");
            return make_rl();
        case KernelFamily::prabhakar: return make_prabhakar(params);
        case KernelFamily::ab: return make_ab(params);
        case KernelFamily::gpf: return make_gpf(params);
        case KernelFamily::ml: return make_ml(params);
        case KernelFamily::explicit_list: return make_explicit(params);
    }
    throw DomainError("unknown kernel family");
}

double eval_A(const KernelSpec& kernel, const OrderPair& order, double x,
              const TruncationPolicy& trunc) {
    return eval_A_impl<double>(kernel, order, x, trunc);
}

std::complex<double> eval_A(const KernelSpec& kernel, const OrderPair& order,
                            std::complex<double> x, const TruncationPolicy& trunc) {
    return eval_A_impl<std::complex<double>>(kernel, order, x, trunc);
}

double eval_A_gamma(const KernelSpec& kernel, const OrderPair& order, double x,
                    const TruncationPolicy& trunc) {
    return eval_A_gamma_impl<double>(kernel, order, x, trunc);
}

std::complex<double> eval_A_gamma(const KernelSpec& kernel, const OrderPair& order,
                                  std::complex<double> x, const TruncationPolicy& trunc) {
    return eval_A_gamma_impl<std::complex<double>>(kernel, order, x, trunc);
}

double gamma_weighted_coefficient(const KernelSpec& kernel, const OrderPair& order, std::size_t n) {
    const double a_n = kernel.coefficient(n, order);
    if (a_n == 0.0) return 0.0;
    const double arg = order.beta() * static_cast<double>(n) + order.alpha();
    if (arg < 170.0) return a_n * gamma(arg);
    const double sign = a_n < 0.0 ? -1.0 : 1.0;
    return sign * std::exp(std::log(std::abs(a_n)) + std::lgamma(arg));
}

KernelSpec reciprocal_kernel(const KernelSpec& kernel, const OrderPair& order, int m,
                             std::size_t n_terms) {
    if (m <= 0) throw DomainError("reciprocal_kernel: m must be a positive integer");
    if (n_terms == 0) throw DomainError("reciprocal_kernel: n_terms must be positive");
    const double dual_alpha = static_cast<double>(m) - order.alpha();
    if (!(dual_alpha > 0.0)) {
        throw DomainError("reciprocal_kernel: m - alpha = " + format_number(dual_alpha) +
                          " must be positive");
    }
    const double beta = order.beta();

    // A_Gamma coefficients b_j, then the formal reciprocal c_k, then divide
    // out Gamma(beta k + m - alpha).
    std::vector<double> b(n_terms);
    for (std::size_t j = 0; j < n_terms; ++j) b[j] = gamma_weighted_coefficient(kernel, order, j);
    if (b[0] == 0.0) {
        throw DomainError("reciprocal_kernel: a_0 Gamma(alpha) = 0, kernel " + kernel.label() +
                          " is not invertible");
    }
    std::vector<double> c(n_terms);
    c[0] = 1.0 / b[0];
    for (std::size_t k = 1; k < n_terms; ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= k; ++j) acc += b[j] * c[k - j];
        c[k] = -acc / b[0];
    }
    std::vector<double> coeffs(n_terms);
    for (std::size_t k = 0; k < n_terms; ++k) {
        coeffs[k] = c[k] * rgamma(beta * static_cast<double>(k) + dual_alpha);
    }

    KernelParams params;
    params["coeffs"] = std::move(coeffs);
    KernelSpec list = make_kernel(KernelFamily::explicit_list, params);
    auto rule = [list](std::size_t n, const OrderPair& o) { return list.coefficient(n, o); };
    return KernelSpec(KernelFamily::explicit_list, "reciprocal(" + kernel.label() + ")", rule,
                      kInf, n_terms);
}

std::vector<double> reciprocal_identity_residual(const KernelSpec& kernel, const OrderPair& order, int m,
                                                 std::size_t k_max) {
    const KernelSpec recip = reciprocal_kernel(kernel, order, m, k_max + 1);
    const OrderPair dual(static_cast<double>(m) - order.alpha(), order.beta());
    std::vector<double> residuals;
    residuals.reserve(k_max + 1);
    for (std::size_t k = 0; k <= k_max; ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i <= k; ++i) {
            sum += gamma_weighted_coefficient(recip, dual, i) *
                   gamma_weighted_coefficient(kernel, order, k - i);
        }
        residuals.push_back(std::abs(sum - (k == 0 ? 1.0 : 0.0)));
    }
    return residuals;
}

std::vector<double> semigroup_residual(const KernelSpec& kernel, double alpha1, double alpha2,
                                       double beta, std::size_t k_max) {
    const OrderPair first(alpha1, beta);
    const OrderPair second(alpha2, beta);
    const OrderPair combined(alpha1 + alpha2, beta);
    std::vector<double> residuals;
    residuals.reserve(k_max + 1);
    for (std::size_t k = 0; k <= k_max; ++k) {
        double lhs = 0.0;
        for (std::size_t n = 0; n <= k; ++n) {
            lhs += gamma_weighted_coefficient(kernel, first, n) *
                   gamma_weighted_coefficient(kernel, second, k - n);
        }
        const double rhs = gamma_weighted_coefficient(kernel, combined, k);
        residuals.push_back(std::abs(lhs - rhs));
    }
    return residuals;
}

KernelEvaluator::KernelEvaluator(const KernelSpec& kernel, const OrderPair& order,
                                 const TruncationPolicy& trunc)
    : kernel_(kernel), trunc_(trunc) {
    trunc_.validate();
    coeffs_ = kernel_.coefficients(order, kernel_.support().value_or(trunc_.max_terms));
}

double KernelEvaluator::operator()(double x) const {
    if (std::abs(x) >= kernel_.radius()) {
        throw DivergenceError("eval_A: |x| = " + format_number(std::abs(x)) +
                              " is outside the radius of convergence " +
                              format_number(kernel_.radius()) + " of kernel " + kernel_.label());
    }
    return sum_series<double>([this](std::size_t n) { return (*coeffs_)[n]; }, kernel_.support(), x,
                              trunc_, false, "eval_A", kernel_);
}

double kernel_sup_on_segment(const KernelSpec& kernel, const OrderPair& order, double x_max,
                             const TruncationPolicy& trunc) {
    constexpr int kSamples = 512;
    if (!(x_max >= 0.0)) throw DomainError("kernel_sup_on_segment: x_max must be non-negative");
    const KernelEvaluator A(kernel, order, trunc);
    double sup = std::abs(A(0.0));
    if (x_max == 0.0) return sup;
    for (int i = 1; i <= kSamples; ++i) {
        const double x = (i == kSamples) ? x_max : x_max * static_cast<double>(i) / kSamples;
        sup = std::max(sup, std::abs(A(x)));
    }
    return sup;
}

}  // namespace genfrac
