#include "genfrac/calculus_rules.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <string>

#include "genfrac/errors.hpp"
#include "genfrac/special.hpp"

namespace genfrac {

namespace {

constexpr int kMaxPartitionOrder = 20;
constexpr int kMaxChainOrder = 12;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void enumerate(int m, int remaining, int part, std::vector<int>& mult,
               std::vector<PartitionTerm>& out) {
    if (remaining == 0) {
        PartitionTerm term;
        term.multiplicity = mult;
        double denom = 1.0;
        for (int j = 1; j <= m; ++j) {
            const int r = mult[j - 1];
            term.r += r;
            denom *= factorial(r) * std::pow(factorial(j), r);
        }
        term.weight = factorial(m) / denom;
        out.push_back(std::move(term));
        return;
    }
    if (part == 0) return;
    for (int count = remaining / part; count >= 0; --count) {
        mult[part - 1] = count;
        enumerate(m, remaining - count * part, part - 1, mult, out);
    }
    mult[part - 1] = 0;
}

}  // namespace

std::shared_ptr<const std::vector<PartitionTerm>> partitions(int m) {
    if (m < 0 || m > kMaxPartitionOrder) {
        throw DomainError("partitions: order " + std::to_string(m) + " outside 0.." +
                          std::to_string(kMaxPartitionOrder));
    }
    static std::mutex mutex;
    static std::array<std::shared_ptr<const std::vector<PartitionTerm>>, kMaxPartitionOrder + 1> cache;
    std::lock_guard lock(mutex);
    if (!cache[m]) {
        auto list = std::make_shared<std::vector<PartitionTerm>>();
        std::vector<int> mult(m, 0);
        enumerate(m, m, m, mult, *list);
        cache[m] = std::move(list);
    }
    return cache[m];
}

double faa_di_bruno(const std::vector<double>& f_derivs, const std::vector<double>& g_derivs, int m) {
    if (m < 0) throw DomainError("faa_di_bruno: order must be non-negative");
    if (f_derivs.size() < static_cast<std::size_t>(m) + 1 ||
        (m > 0 && g_derivs.size() < static_cast<std::size_t>(m) + 1)) {
        throw DomainError("faa_di_bruno: need derivatives up to order " + std::to_string(m));
    }
    if (m == 0) return f_derivs[0];
    double total = 0.0;
    for (const PartitionTerm& p : *partitions(m)) {
        double product = p.weight;
        for (int j = 1; j <= m; ++j) {
            const int r = p.multiplicity[j - 1];
            if (r > 0) product *= std::pow(g_derivs[j], r);
        }
        total += f_derivs[p.r] * product;
    }
    return total;
}

SampledFunction leibniz_series(const GenOperator& op, const SampledFunction& f,
                               const std::vector<SampledFunction>& g_derivs, int M) {
    if (M < 0) throw DomainError("leibniz_series: M must be non-negative");
    if (g_derivs.size() < static_cast<std::size_t>(M) + 1) {
        throw DomainError("leibniz_series: M = " + std::to_string(M) + " needs " +
                          std::to_string(M + 1) + " derivatives of g, got " +
                          std::to_string(g_derivs.size()));
    }
    if (f.a() != op.a() || f.b() != op.b() || f.first_node() != 0) {
        throw DomainError("leibniz_series: f must be sampled on the operator interval");
    }
    for (int m = 0; m <= M; ++m) {
        if (!g_derivs[m].same_grid(f)) {
            throw DomainError("leibniz_series: derivative " + std::to_string(m) +
                              " of g is on a different grid");
        }
    }
    const double alpha = op.order().alpha();
    const double beta = op.order().beta();
    const auto coeffs =
        op.kernel().coefficients(op.order(), op.kernel().support().value_or(op.truncation().max_terms));

    std::vector<double> result(f.size(), 0.0);
    for (int m = 0; m <= M; ++m) {
        auto coef = [&](std::size_t n) {
            const double nu = beta * static_cast<double>(n) + alpha;
            const double a_n = (*coeffs)[n];
            if (a_n == 0.0) return 0.0;
            return a_n * gamma_ratio(nu, nu + m) * binomial(-nu, static_cast<std::size_t>(m));
        };
        const ConvolutionWeights w = series_weights(op, m, coef, f.h(), f.intervals(), f.max_abs());
        const std::vector<double> term = convolve(w, f.values());
        const auto& g = g_derivs[m];
        for (std::size_t j = 0; j < result.size(); ++j) result[j] += g[j] * term[j];
    }
    return SampledFunction(f.a(), f.b(), std::move(result));
}

SampledFunction chain_series(const GenOperator& op, const DerivativeFn& f_derivs,
                             const DerivativeFn& g_derivs, int M, std::size_t intervals) {
    if (op.a() != 0.0) {
        throw DomainError("chain_series: unsupported base point a = " + std::to_string(op.a()) +
                          ", the chain rule series needs a = 0");
    }
    if (M < 0 || M > kMaxChainOrder) {
        throw DomainError("chain_series: M must lie in 0.." + std::to_string(kMaxChainOrder));
    }
    const auto& trunc = op.truncation();
    const double alpha = op.order().alpha();
    const double beta = op.order().beta();
    const double b = op.b();
    const std::size_t count = op.kernel().support().value_or(trunc.max_terms);
    const auto coeffs = op.kernel().coefficients(op.order(), count);

    // Number of n-terms needed for each m, from the bound at t = b.
    std::vector<std::size_t> terms(M + 1, count);
    if (!op.kernel().support()) {
        for (int m = 0; m <= M; ++m) {
            double previous = 0.0;
            bool done = false;
            for (std::size_t n = 0; n < count; ++n) {
                const double nu = alpha + beta * static_cast<double>(n) + m;
                const double bound = std::abs((*coeffs)[n]) * std::pow(b, nu) / (factorial(m) * nu);
                if (n > 0 && bound < trunc.tail_tol && previous < trunc.tail_tol) {
                    terms[m] = n + 1;
                    done = true;
                    break;
                }
                previous = bound;
            }
            if (!done) {
                throw TruncationError("chain_series: inner series did not converge for m = " +
                                          std::to_string(m),
                                      previous);
            }
        }
    }

    SampledFunction grid = SampledFunction::zeros(0.0, b, intervals);
    std::vector<double> result(intervals + 1, 0.0);
    std::vector<double> fd(M + 1);
    std::vector<double> gd(M + 1);
    for (std::size_t i = 1; i <= intervals; ++i) {
        const double t = grid.node(i);
        for (int j = 0; j <= M; ++j) gd[j] = g_derivs(j, t);
        for (int r = 0; r <= M; ++r) fd[r] = f_derivs(r, gd[0]);
        double total = 0.0;
        for (int m = 0; m <= M; ++m) {
            double inner = 0.0;
            for (std::size_t n = 0; n < terms[m]; ++n) {
                const double nu = alpha + beta * static_cast<double>(n) + m;
                inner += (*coeffs)[n] * std::pow(t, nu) / nu;
            }
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            total += faa_di_bruno(fd, gd, m) * sign * inner / factorial(m);
        }
        result[i] = total;
    }
    return SampledFunction(0.0, b, std::move(result));
}

}  // namespace genfrac
