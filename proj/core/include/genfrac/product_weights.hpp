#pragma once

/**
 * @file product_weights.hpp
 * @brief Product-integration weights for the weakly singular factor (t - tau)^(nu-1).
 *
 * The smooth part phi of an integrand is replaced by its piecewise linear
 * interpolant and integrated against (t - tau)^(nu-1) exactly. On a uniform
 * grid the weights depend only on the distance d = j - i between target and
 * source node, apart from the left endpoint, so
 *
 *     int_{t_0}^{t_j} (t_j - tau)^(nu-1) phi(tau) dtau
 *         ~ sum_{d=0}^{j-1} interior[d] phi_{j-d} + endpoint[j] phi_0.
 *
 * No 1/Gamma(nu) factor is included.
 */

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace genfrac {

struct ConvolutionWeights {
    std::vector<double> interior;  ///< d = 0 .. N-1
    std::vector<double> endpoint;  ///< j = 0 .. N, endpoint[0] = 0

    static ConvolutionWeights zero(std::size_t intervals);

    /// this += c * other
    void add_scaled(const ConvolutionWeights& other, double c);
    void scale(double c);
    std::size_t intervals() const noexcept { return interior.size(); }
};

/// L^nu * (int_0^1 (c+x)^(nu-1) dx, int_0^1 (c+x)^(nu-1) x dx) for c >= 0.
/// A binomial expansion in 1/c replaces the closed form for c >= 4.
std::pair<double, double> scaled_power_moments(double c, double nu, double L);

/// Uniform-grid weights for order nu > 0, spacing h, N intervals.
ConvolutionWeights uniform_weights(double nu, double h, std::size_t intervals);

/// g_j for j = 0..N, with g_0 = 0. phi must have N + 1 entries.
std::vector<double> convolve(const ConvolutionWeights& w, const std::vector<double>& phi);

/// g_j for one target node.
double convolve_at(const ConvolutionWeights& w, const std::vector<double>& phi, std::size_t j);

/// Weights w_0..w_K for int_{s_0}^{s_K} (s_K - tau)^(nu-1) phi(tau) dtau over
/// increasing, possibly non-uniform nodes s_0 < ... < s_K.
std::vector<double> nonuniform_weights(std::span<const double> nodes, double nu);

}  // namespace genfrac
