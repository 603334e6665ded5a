#include "genfrac/psi.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <memory>
#include <span>

// Boost 1.74 pchip.hpp calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <sstream>

#include "genfrac/calculus_rules.hpp"
#include "genfrac/errors.hpp"
#include "genfrac/product_weights.hpp"
#include "genfrac/special.hpp"

namespace genfrac {

PsiFunction::PsiFunction(Kind kind, double param, std::string label,
                         std::function<double(double)> psi, std::function<double(double)> dpsi)
    : kind_(kind), param_(param), label_(std::move(label)), psi_(std::move(psi)), dpsi_(std::move(dpsi)) {}

PsiFunction PsiFunction::identity() {
    return PsiFunction(Kind::identity, 0.0, "identity", [](double t) { return t; },
                       [](double) { return 1.0; });
}

PsiFunction PsiFunction::log() {
    return PsiFunction(Kind::log, 0.0, "log", [](double t) { return std::log(t); },
                       [](double t) { return 1.0 / t; });
}

PsiFunction PsiFunction::power_shifted(double rho) {
    if (!(rho > -1.0)) throw DomainError("psi power: rho must exceed -1");
    const double p = rho + 1.0;
    return PsiFunction(Kind::power_shifted, rho, "power:rho=" + std::to_string(rho),
                       [p](double t) { return std::pow(t, p); },
                       [p](double t) { return p * std::pow(t, p - 1.0); });
}

PsiFunction PsiFunction::power(double sigma) {
    if (!(sigma > 0.0)) throw DomainError("psi powsigma: sigma must be positive");
    return PsiFunction(Kind::power, sigma, "powsigma:sigma=" + std::to_string(sigma),
                       [sigma](double t) { return std::pow(t, sigma); },
                       [sigma](double t) { return sigma * std::pow(t, sigma - 1.0); });
}

PsiFunction PsiFunction::custom(std::function<double(double)> psi, std::function<double(double)> dpsi,
                                std::string label) {
    if (!psi || !dpsi) throw DomainError("psi custom: both psi and psi' are required");
    return PsiFunction(Kind::custom, 0.0, std::move(label), std::move(psi), std::move(dpsi));
}

void PsiFunction::validate_on(const SampledFunction& grid) const {
    const bool power_kind = kind_ == Kind::power || kind_ == Kind::power_shifted;
    if (kind_ == Kind::log && !(grid.a() > 0.0)) {
        throw DomainError("psi log: the interval must start at a > 0, got a = " + std::to_string(grid.a()));
    }
    if (power_kind && grid.a() < 0.0) {
        throw DomainError("psi " + label_ + ": the interval must start at a >= 0");
    }
    double previous = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid.node(i);
        const double value = psi_(t);
        if (!std::isfinite(value)) {
            throw DomainError("invalid psi " + label_ + ": psi(" + std::to_string(t) + ") is not finite");
        }
        if (i > 0 && !(value > previous)) {
            throw DomainError("invalid psi " + label_ + ": not strictly increasing at t = " +
                              std::to_string(t));
        }
        previous = value;
        if (power_kind && t == 0.0) continue;
        const double slope = dpsi_(t);
        if (!std::isfinite(slope) || !(slope > 0.0)) {
            throw DomainError("invalid psi " + label_ + ": psi'(" + std::to_string(t) +
                              ") must be finite and positive");
        }
    }
}

PsiFunction parse_psi_spec(std::string_view text) {
    if (text == "identity") return PsiFunction::identity();
    if (text == "log") return PsiFunction::log();
    auto parse_param = [&](std::string_view prefix) {
        const std::string_view rest = text.substr(prefix.size());
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
        if (rest.empty() || ec != std::errc() || ptr != rest.data() + rest.size()) {
            throw ParseError("psi spec: expected a number at position " + std::to_string(prefix.size()),
                             prefix.size());
        }
        return v;
    };
    if (text.starts_with("power:rho=")) return PsiFunction::power_shifted(parse_param("power:rho="));
    if (text.starts_with("powsigma:sigma=")) return PsiFunction::power(parse_param("powsigma:sigma="));
    throw ParseError("psi spec: expected identity, log, power:rho=R or powsigma:sigma=S", 0);
}

namespace {

void check_psi_operator(const GenOperator& op, const PsiFunction& psi, const SampledFunction& f,
                        const char* who) {
    if (f.a() != op.a() || f.b() != op.b() || f.first_node() != 0) {
        throw DomainError(std::string(who) + ": f must be sampled on the operator interval");
    }
    if (f.intervals() < 3) throw DomainError(std::string(who) + ": need at least 3 intervals");
    psi.validate_on(f);
    const double reach = std::pow(psi(f.b()) - psi(f.a()), op.order().beta());
    if (!(op.kernel().radius() > reach)) {
        std::ostringstream os;
        os << who << ": radius condition violated, (psi(b)-psi(a))^beta = " << reach
           << " is not below the kernel radius " << op.kernel().radius();
        throw DomainError(os.str());
    }
}

std::vector<double> psi_nodes(const PsiFunction& psi, const SampledFunction& f) {
    std::vector<double> u(f.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = psi(f.node(i));
    return u;
}

/// Kernel d^(alpha-1) A(d^beta) split into the leading powers d^(nu-1),
/// nu = alpha + n beta < 2, which get exact product weights, and the remainder
/// d^(alpha-1) (A - leading part)(d^beta), which is smooth enough for the
/// piecewise linear rule.
struct SplitKernel {
    std::vector<std::pair<double, double>> exact;  ///< (nu, a_n)
    std::function<double(double)> remainder;       ///< of d; empty when identically zero
};

SplitKernel split_kernel(const GenOperator& op) {
    constexpr std::size_t kMaxExact = 16;
    const double alpha = op.order().alpha();
    const double beta = op.order().beta();
    std::size_t k0 = 0;
    if (beta > 0.0) {
        while (k0 < kMaxExact && alpha + beta * static_cast<double>(k0) < 2.0) ++k0;
    }
    const auto support = op.kernel().support();
    if (support) k0 = std::min(k0, *support);

    SplitKernel split;
    const auto coeffs = op.kernel().coefficients(op.order(), k0);
    for (std::size_t n = 0; n < k0; ++n) {
        if ((*coeffs)[n] != 0.0) split.exact.emplace_back(alpha + beta * static_cast<double>(n), (*coeffs)[n]);
    }
    if (support && k0 == *support) return split;
    auto A = std::make_shared<const KernelEvaluator>(op.kernel(), op.order(), op.truncation());
    split.remainder = [A, coeffs, k0, beta](double d) {
        const double x = std::pow(d, beta);
        double leading = 0.0;
        for (std::size_t n = k0; n-- > 0;) leading = leading * x + (*coeffs)[n];
        return (*A)(x) - leading;
    };
    return split;
}

/// sum_i w_i(nu) * factor(target - s_i) * vals_i over the given nodes, for
/// every exact order and the remainder at order alpha.
double apply_split(const SplitKernel& k, double alpha, std::span<const double> nodes, std::span<const double> vals) {
    const double target = nodes.back();
    double total = 0.0;
    for (const auto& [nu, coef] : k.exact) {
        const std::vector<double> w = nonuniform_weights(nodes, nu);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += w[i] * vals[i];
        total += coef * sum;
    }
    if (k.remainder) {
        const std::vector<double> w = nonuniform_weights(nodes, alpha);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += w[i] * k.remainder(target - nodes[i]) * vals[i];
        total += sum;
    }
    return total;
}

/// Product integration on the uniform u-grid with the data resampled by PCHIP.
class ResampledIntegrator {
public:
    ResampledIntegrator(const std::vector<double>& u, const std::vector<double>& f) : u_(u), f_(f) {
        const std::size_t n = u.size() - 1;
        grid_.resize(n + 1);
        values_.resize(n + 1);
        step_ = (u.back() - u.front()) / static_cast<double>(n);
        auto x = u;
        auto y = f;
        boost::math::interpolators::pchip<std::vector<double>> spline(std::move(x), std::move(y));
        for (std::size_t k = 0; k <= n; ++k) {
            grid_[k] = k == n ? u.back() : u.front() + step_ * static_cast<double>(k);
            values_[k] = spline(grid_[k]);
        }
        values_.front() = f.front();
        values_.back() = f.back();
    }

    std::vector<double> integrate(const SplitKernel& kernel, double alpha) const {
        std::vector<double> out(u_.size(), 0.0);
        std::vector<double> nodes;
        std::vector<double> vals;
        for (std::size_t j = 1; j < u_.size(); ++j) {
            const double target = u_[j];
            nodes.clear();
            vals.clear();
            for (std::size_t k = 0; k < grid_.size() && grid_[k] < target; ++k) {
                nodes.push_back(grid_[k]);
                vals.push_back(values_[k]);
            }
            if (!nodes.empty() && target - nodes.back() < 1e-12 * step_) {
                nodes.pop_back();
                vals.pop_back();
            }
            nodes.push_back(target);
            vals.push_back(f_[j]);
            if (nodes.size() < 2) continue;
            out[j] = apply_split(kernel, alpha, nodes, vals);
        }
        return out;
    }

private:
    const std::vector<double>& u_;
    const std::vector<double>& f_;
    std::vector<double> grid_;
    std::vector<double> values_;
    double step_ = 0.0;
};

}  // namespace

SampledFunction psi_integral(const GenOperator& op, const PsiFunction& psi, const SampledFunction& f) {
    check_psi_operator(op, psi, f, "psi_integral");
    if (psi.kind() == PsiFunction::Kind::identity) return integral_direct(op, f);
    const std::vector<double> u = psi_nodes(psi, f);
    ResampledIntegrator integrator(u, f.values());
    auto values = integrator.integrate(split_kernel(op), op.order().alpha());
    return SampledFunction(f.a(), f.b(), std::move(values));
}

SampledFunction psi_integral_nodal(const GenOperator& op, const PsiFunction& psi,
                                   const SampledFunction& f) {
    check_psi_operator(op, psi, f, "psi_integral_nodal");
    const std::vector<double> u = psi_nodes(psi, f);
    const SplitKernel kernel = split_kernel(op);
    std::vector<double> out(u.size(), 0.0);
    for (std::size_t j = 1; j < u.size(); ++j) {
        out[j] = apply_split(kernel, op.order().alpha(), std::span<const double>(u.data(), j + 1),
                             std::span<const double>(f.values().data(), j + 1));
    }
    return SampledFunction(f.a(), f.b(), std::move(out));
}

SampledFunction hadamard_integral(double alpha, const SampledFunction& f) {
    const GenOperator op(make_kernel(KernelFamily::rl), OrderPair(alpha, 0.0), f.a(), f.b());
    return psi_integral(op, PsiFunction::log(), f);
}

SampledFunction katugampola_integral(double alpha, double rho, const SampledFunction& f) {
    const OrderPair order(alpha, 0.0);
    KernelParams params;
    params["coeffs"] = std::vector<double>{std::pow(rho + 1.0, -alpha) * rgamma(alpha)};
    const GenOperator op(make_kernel(KernelFamily::explicit_list, params), order, f.a(), f.b());
    return psi_integral(op, PsiFunction::power_shifted(rho), f);
}

SampledFunction erdelyi_kober_integral(double alpha, double sigma, double eta, const SampledFunction& f) {
    if (f.a() != 0.0) throw DomainError("erdelyi_kober_integral: the interval must start at a = 0");
    if (!(eta >= 0.0)) throw DomainError("erdelyi_kober_integral: eta must be non-negative");
    if (f.first_node() != 0) throw DomainError("erdelyi_kober_integral: f has no value at t = 0");
    const PsiFunction psi = PsiFunction::power(sigma);
    std::vector<double> weighted(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) weighted[i] = std::pow(f.node(i), sigma * eta) * f[i];
    const SampledFunction h(f.a(), f.b(), std::move(weighted));
    const GenOperator op(make_kernel(KernelFamily::rl), OrderPair(alpha, 0.0), f.a(), f.b());
    const SampledFunction inner = psi_integral(op, psi, h);
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i) {
        out[i] = std::pow(f.node(i), -sigma * (alpha + eta)) * inner[i];
    }
    return SampledFunction(f.a(), f.b(), std::move(out), 1);
}

SampledFunction psi_leibniz_series(const GenOperator& op, const PsiFunction& psi, const SampledFunction& f,
                                   const std::vector<SampledFunction>& g_psi_derivs, int M) {
    if (psi.kind() == PsiFunction::Kind::identity) return leibniz_series(op, f, g_psi_derivs, M);
    check_psi_operator(op, psi, f, "psi_leibniz_series");
    if (M < 0) throw DomainError("psi_leibniz_series: M must be non-negative");
    if (g_psi_derivs.size() < static_cast<std::size_t>(M) + 1) {
        throw DomainError("psi_leibniz_series: M = " + std::to_string(M) + " needs " +
                          std::to_string(M + 1) + " psi-derivatives of g");
    }
    for (int m = 0; m <= M; ++m) {
        if (!g_psi_derivs[m].same_grid(f)) {
            throw DomainError("psi_leibniz_series: derivative " + std::to_string(m) + " is on a different grid");
        }
    }
    const auto& trunc = op.truncation();
    const double alpha = op.order().alpha();
    const double beta = op.order().beta();
    const std::size_t count = op.kernel().support().value_or(trunc.max_terms);
    const auto coeffs = op.kernel().coefficients(op.order(), count);
    const std::vector<double> u = psi_nodes(psi, f);
    const double span = u.back() - u.front();
    const double f_max = f.max_abs();
    ResampledIntegrator integrator(u, f.values());

    std::vector<double> result(f.size(), 0.0);
    for (int m = 0; m <= M; ++m) {
        std::vector<std::pair<double, double>> orders;
        double previous = 0.0;
        bool done = op.kernel().support().has_value();
        for (std::size_t n = 0; n < count; ++n) {
            const double nu = beta * static_cast<double>(n) + alpha;
            const double a_n = (*coeffs)[n];
            const double c = a_n == 0.0 ? 0.0
                                        : a_n * gamma_ratio(nu, nu + m) * binomial(-nu, static_cast<std::size_t>(m));
            if (c != 0.0) orders.emplace_back(nu + m, c);
            if (op.kernel().support()) continue;
            const double bound = std::abs(c) * std::pow(span, nu + m) / (nu + m) * f_max;
            if (n > 0 && bound < trunc.tail_tol && previous < trunc.tail_tol) {
                done = true;
                break;
            }
            previous = bound;
        }
        if (!done) {
            throw TruncationError("psi_leibniz_series: series in n did not reach tail_tol for m = " +
                                      std::to_string(m),
                                  previous);
        }
        const std::vector<double> term = integrator.integrate(SplitKernel{std::move(orders), {}}, alpha);
        const auto& g = g_psi_derivs[m];
        for (std::size_t j = 0; j < result.size(); ++j) result[j] += g[j] * term[j];
    }
    return SampledFunction(f.a(), f.b(), std::move(result));
}

}  // namespace genfrac
