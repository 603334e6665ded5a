#include "genfrac/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "genfrac/errors.hpp"
#include "genfrac/special.hpp"

namespace genfrac {

int CauchyProblem::n() const {
    return static_cast<int>(std::ceil(gamma));
}

void CauchyProblem::validate() const {
    if (!(alpha > 0.0)) {
        throw DomainError("cauchy problem: alpha must be positive (alpha = 0 is not an admissible order)");
    }
    if (!(beta >= 0.0)) throw DomainError("cauchy problem: beta must be non-negative");
    if (!(gamma > 0.0)) throw DomainError("cauchy problem: gamma must be positive");
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
        throw DomainError("cauchy problem: need finite a < b");
    }
    if (constants.size() != static_cast<std::size_t>(n())) {
        throw DomainError("cauchy problem: gamma = " + std::to_string(gamma) + " needs " +
                          std::to_string(n()) + " initial constants, got " +
                          std::to_string(constants.size()));
    }
    if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
        throw DomainError("cauchy problem: lipschitz constant must be positive");
    }
    if (!rhs) throw DomainError("cauchy problem: missing right-hand side");
    trunc.validate();
}

bool CauchyProblem::singular_at_a() const {
    for (std::size_t i = 0; i < constants.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        if (constants[i] != 0.0 && gamma - k < 0.0 && rgamma(gamma - k + 1.0) != 0.0) return true;
    }
    return false;
}

double volterra_u0(const CauchyProblem& p, double t) {
    if (t < p.a) throw DomainError("volterra_u0: t precedes a");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.constants.size(); ++i) {
        const double c = p.constants[i];
        const double exponent = p.gamma - static_cast<double>(i + 1);
        const double scale = rgamma(exponent + 1.0);
        if (c == 0.0 || scale == 0.0) continue;
        if (t == p.a) {
            if (exponent < 0.0) {
                throw DomainError("volterra_u0: singular node t = a, term C_" + std::to_string(i + 1) +
                                  " (t-a)^" + std::to_string(exponent) + " is unbounded");
            }
            if (exponent == 0.0) sum += c * scale;
            continue;
        }
        sum += c * std::pow(t - p.a, exponent) * scale;
    }
    return sum;
}

SampledFunction volterra_u0_grid(const CauchyProblem& p, std::size_t intervals) {
    const std::size_t first = p.singular_at_a() ? 1 : 0;
    return SampledFunction::sample(p.a, p.b, intervals, [&](double t) { return volterra_u0(p, t); },
                                   first);
}

KernelSpec volterra_kernel(const CauchyProblem& p) {
    const KernelSpec base = p.kernel;
    const OrderPair inner(p.alpha, p.beta);
    const double gamma = p.gamma;
    auto rule = [base, inner, gamma](std::size_t n, const OrderPair&) {
        const double a_n = base.coefficient(n, inner);
        if (a_n == 0.0) return 0.0;
        const double x = inner.beta() * static_cast<double>(n) + inner.alpha();
        return a_n * gamma_ratio(x, x + gamma);
    };
    return KernelSpec(base.family(), "volterra(" + base.label() + ")", rule, base.radius(),
                      base.support());
}

GenOperator volterra_operator(const CauchyProblem& p) {
    return GenOperator(volterra_kernel(p), OrderPair(p.alpha + p.gamma, p.beta), p.a, p.b, p.trunc);
}

namespace {

double contraction_constant_with(const CauchyProblem& p, const KernelSpec& kernel, double width) {
    const double nu = p.alpha + p.gamma;
    const OrderPair order(nu, p.beta);
    const double sup = kernel_sup_on_segment(kernel, order, std::pow(width, p.beta), p.trunc);
    return p.lipschitz * std::pow(width, nu) / nu * sup;
}

}  // namespace

double contraction_constant(const CauchyProblem& p, double width) {
    p.validate();
    return contraction_constant_with(p, volterra_kernel(p), width);
}

double contraction_step(const CauchyProblem& p) {
    p.validate();
    const KernelSpec kernel = volterra_kernel(p);
    const double span = p.b - p.a;
    double hi = span / 0.9;
    bool capped_by_radius = false;
    if (std::isfinite(kernel.radius()) && p.beta > 0.0) {
        const double reach = 0.999 * std::pow(kernel.radius(), 1.0 / p.beta);
        if (reach < hi) {
            hi = reach;
            capped_by_radius = true;
        }
    }
    if (contraction_constant_with(p, kernel, hi) < 1.0) {
        return capped_by_radius ? std::min(0.9 * hi, span) : span;
    }
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * span; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (contraction_constant_with(p, kernel, mid) < 1.0) lo = mid;
        else hi = mid;
    }
    return std::min(0.9 * lo, span);
}

CauchySolution solve_cauchy(const CauchyProblem& p, std::size_t n_per_step, double tol,
                            std::size_t max_picard) {
    p.validate();
    if (n_per_step < 2) throw DomainError("solve_cauchy: need at least 2 intervals per window");
    if (!(tol > 0.0)) throw DomainError("solve_cauchy: tol must be positive");
    if (max_picard == 0) throw DomainError("solve_cauchy: max_picard must be positive");

    const double span = p.b - p.a;
    const double h_max = contraction_step(p);
    const auto windows = static_cast<std::size_t>(std::max(1.0, std::ceil(span / h_max - 1e-12)));
    const std::size_t intervals = windows * n_per_step;
    const double step = span / static_cast<double>(windows);

    const SampledFunction u0 = volterra_u0_grid(p, intervals);
    const std::size_t first = u0.first_node();
    const GenOperator vop = volterra_operator(p);
    const auto coeffs =
        vop.kernel().coefficients(vop.order(), vop.kernel().support().value_or(p.trunc.max_terms));
    const ConvolutionWeights w = series_weights(
        vop, 0.0, [&](std::size_t n) { return (*coeffs)[n]; }, u0.h(), intervals, 1.0);

    std::vector<double> t = u0.nodes();
    std::vector<double> u = u0.values();
    std::vector<double> F(intervals + 1, 0.0);
    auto refresh = [&](std::size_t j) {
        F[j] = p.rhs(t[j], u[j]);
        if (!std::isfinite(F[j])) {
            std::ostringstream os;
            os << "solve_cauchy: right-hand side is not finite at t = " << t[j] << ", u = " << u[j];
            throw NumericalError(os.str());
        }
        if (first == 1 && j == 1) F[0] = F[1];
    };
    if (first == 0) refresh(0);

    CauchySolution solution{u0, step, h_max, 0.0, {}};
    const KernelSpec vkernel = vop.kernel();
    for (std::size_t win = 0; win < windows; ++win) {
        const std::size_t j0 = win * n_per_step;
        const std::size_t j1 = j0 + n_per_step;
        const std::size_t start = std::max(j0 + 1, first);
        WindowReport report;
        report.t_start = t[j0];
        report.t_end = t[j1];
        report.ratio_bound = contraction_constant_with(p, vkernel, step);

        const double shift = (j0 >= first && win > 0) ? u[j0] - u0[j0] : 0.0;
        for (std::size_t j = start; j <= j1; ++j) {
            u[j] = u0[j] + shift;
            refresh(j);
        }
        std::vector<double> next(j1 + 1, 0.0);
        bool converged = false;
        for (std::size_t k = 0; k < max_picard; ++k) {
            double diff = 0.0;
            for (std::size_t j = start; j <= j1; ++j) {
                next[j] = u0[j] + convolve_at(w, F, j);
                diff = std::max(diff, std::abs(next[j] - u[j]));
            }
            for (std::size_t j = start; j <= j1; ++j) {
                u[j] = next[j];
                refresh(j);
            }
            report.difference_norms.push_back(diff);
            report.iterations = k + 1;
            if (diff < tol) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            std::ostringstream os;
            os << "solve_cauchy: Picard iteration did not converge on window " << win + 1 << " ["
               << report.t_start << ", " << report.t_end << "] within " << max_picard
               << " sweeps; the Lipschitz bound may be understated";
            throw ConvergenceError(os.str(), report.difference_norms.back());
        }
        solution.windows.push_back(std::move(report));
    }

    double residual = 0.0;
    for (std::size_t j = first; j <= intervals; ++j) {
        residual = std::max(residual, std::abs(u[j] - u0[j] - convolve_at(w, F, j)));
    }
    solution.residual = residual;
    solution.u = SampledFunction(p.a, p.b, std::move(u), first);
    return solution;
}

}  // namespace genfrac
