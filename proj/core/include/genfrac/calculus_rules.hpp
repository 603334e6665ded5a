#pragma once

/**
 * @file calculus_rules.hpp
 * @brief Generalised Leibniz and chain rules as truncated double series.
 */

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "genfrac/kernel.hpp"
#include "genfrac/operator.hpp"
#include "genfrac/sampled.hpp"

namespace genfrac {

/// One multiset partition of m into parts: multiplicity[j-1] = r_j, the number
/// of parts equal to j. r = sum r_j, m = sum j r_j.
struct PartitionTerm {
    int r = 0;
    std::vector<int> multiplicity;
    double weight = 0.0;  ///< m! / prod_j (r_j! (j!)^{r_j})
};

/// All partitions of m (cached, m <= 20).
std::shared_ptr<const std::vector<PartitionTerm>> partitions(int m);

/// d^m/dt^m f(g(t)) by the Faa di Bruno formula.
/// f_derivs[r] = f^{(r)}(g(t)) for r = 0..m, g_derivs[j] = g^{(j)}(t) for j = 0..m.
double faa_di_bruno(const std::vector<double>& f_derivs, const std::vector<double>& g_derivs, int m);

/// sum_{m<=M} g^{(m)}(t) sum_n a_n Gamma(beta n+alpha) C(-alpha-n beta, m) RL-I^{alpha+n beta+m} f(t).
/// g_derivs[m] holds g^{(m)} on the grid of f, m = 0..M.
SampledFunction leibniz_series(const GenOperator& op, const SampledFunction& f,
                               const std::vector<SampledFunction>& g_derivs, int M);

/// Derivative callable: (order, point) -> value.
using DerivativeFn = std::function<double(int, double)>;

/// sum_{m<=M} (d^m/dt^m f(g(t))) sum_n a_n (-1)^m t^{alpha+n beta+m} / (m! (alpha+n beta+m))
/// on a uniform grid of `intervals` intervals over [0, b]. Requires a = 0 and M <= 12.
/// f_derivs(r, x) = f^{(r)}(x), g_derivs(j, t) = g^{(j)}(t).
SampledFunction chain_series(const GenOperator& op, const DerivativeFn& f_derivs,
                             const DerivativeFn& g_derivs, int M, std::size_t intervals);

}  // namespace genfrac
