#include "genfrac/product_weights.hpp"

#include <cmath>
#include <string>

#include "genfrac/errors.hpp"

namespace genfrac {

namespace {

constexpr double kSeriesThreshold = 4.0;

void check_order(double nu) {
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw DomainError("product integration: order " + std::to_string(nu) + " must be positive");
    }
}

}  // namespace

ConvolutionWeights ConvolutionWeights::zero(std::size_t intervals) {
    ConvolutionWeights w;
    w.interior.assign(intervals, 0.0);
    w.endpoint.assign(intervals + 1, 0.0);
    return w;
}

void ConvolutionWeights::add_scaled(const ConvolutionWeights& other, double c) {
    if (other.interior.size() != interior.size()) {
        throw DomainError("convolution weights: size mismatch");
    }
    for (std::size_t d = 0; d < interior.size(); ++d) interior[d] += c * other.interior[d];
    for (std::size_t j = 0; j < endpoint.size(); ++j) endpoint[j] += c * other.endpoint[j];
}

void ConvolutionWeights::scale(double c) {
    for (double& w : interior) w *= c;
    for (double& w : endpoint) w *= c;
}

std::pair<double, double> scaled_power_moments(double c, double nu, double L) {
    if (c < kSeriesThreshold) {
        const double hi = L * (c + 1.0);
        const double lo = L * c;
        const double m0 = (std::pow(hi, nu) - std::pow(lo, nu)) / nu;
        const double m1 = (std::pow(hi, nu + 1.0) - std::pow(lo, nu + 1.0)) / (L * (nu + 1.0)) - c * m0;
        return {m0, m1};
    }
    // (c+x)^(nu-1) = c^(nu-1) sum_k C(nu-1, k) (x/c)^k
    const double lead = L * std::pow(L * c, nu - 1.0);
    double coeff = 1.0;
    double s0 = 0.0;
    double s1 = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double t0 = coeff / (k + 1.0);
        const double t1 = coeff / (k + 2.0);
        s0 += t0;
        s1 += t1;
        if (std::abs(t0) <= 1e-18 * std::abs(s0)) break;
        coeff *= (nu - 1.0 - k) / ((k + 1.0) * c);
        if (coeff == 0.0) break;
    }
    return {lead * s0, lead * s1};
}

ConvolutionWeights uniform_weights(double nu, double h, std::size_t intervals) {
    check_order(nu);
    if (intervals == 0) throw DomainError("product integration: need at least one interval");
    std::vector<double> p(intervals);
    std::vector<double> q(intervals);
    for (std::size_t d = 0; d < intervals; ++d) {
        const auto [m0, m1] = scaled_power_moments(static_cast<double>(d), nu, h);
        p[d] = m0 - m1;
        q[d] = m1;
    }
    ConvolutionWeights w = ConvolutionWeights::zero(intervals);
    w.interior[0] = p[0];
    for (std::size_t d = 1; d < intervals; ++d) w.interior[d] = p[d] + q[d - 1];
    for (std::size_t j = 1; j <= intervals; ++j) w.endpoint[j] = q[j - 1];
    return w;
}

double convolve_at(const ConvolutionWeights& w, const std::vector<double>& phi, std::size_t j) {
    if (j == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t d = 0; d < j; ++d) sum += w.interior[d] * phi[j - d];
    return sum + w.endpoint[j] * phi[0];
}

std::vector<double> convolve(const ConvolutionWeights& w, const std::vector<double>& phi) {
    if (phi.size() != w.intervals() + 1) {
        throw DomainError("convolve: expected " + std::to_string(w.intervals() + 1) + " values, got " +
                          std::to_string(phi.size()));
    }
    std::vector<double> g(phi.size(), 0.0);
    for (std::size_t j = 1; j < phi.size(); ++j) g[j] = convolve_at(w, phi, j);
    return g;
}

std::vector<double> nonuniform_weights(std::span<const double> nodes, double nu) {
    check_order(nu);
    std::vector<double> w(nodes.size(), 0.0);
    if (nodes.size() < 2) return w;
    const double target = nodes.back();
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        const double L = nodes[k + 1] - nodes[k];
        if (!(L > 0.0)) throw DomainError("product integration: nodes must be strictly increasing");
        const double c = (target - nodes[k + 1]) / L;
        const auto [m0, m1] = scaled_power_moments(c, nu, L);
        w[k + 1] += m0 - m1;
        w[k] += m1;
    }
    return w;
}

}  // namespace genfrac
