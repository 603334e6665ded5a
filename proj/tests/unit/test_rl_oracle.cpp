#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "gen.hpp"
#include "genfrac/errors.hpp"
#include "genfrac/product_weights.hpp"
#include "genfrac/rl_oracle.hpp"
#include "genfrac/sampled.hpp"
#include "oracles.hpp"

using namespace genfrac;

namespace {

SampledFunction grid(double a, double b, std::size_t n, const std::function<double(double)>& f) {
    return SampledFunction::sample(a, b, n, f);
}

double max_error(const SampledFunction& f, const std::function<double(double)>& exact, double from, double to) {
    double worst = 0.0;
    for (std::size_t i = f.first_node(); i < f.size(); ++i) {
        const double t = f.node(i);
        if (t < from || t > to) continue;
        worst = std::max(worst, std::abs(f[i] - exact(t)));
    }
    return worst;
}

}  // namespace

TEST_CASE("rl_integral_power examples") {
    CHECK(rl_integral_power(1.0, 1.0, 0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
    const double quad = oracle::rl_integral(0.5, [](double) { return 1.0; }, 0.0, 1.0);
    CHECK(rl_integral_power(0.5, 0.0, 0.0, 1.0) == doctest::Approx(quad).epsilon(1e-12));
    CHECK(rl_integral_power(0.5, 0.0, 0.0, 1.0) == doctest::Approx(1.128379167).epsilon(1e-9));
    // I^0.5 I^0.5 1 = I^1 1 at t = 1
    const double half = rl_integral_power(0.5, 0.0, 0.0, 1.0);
    CHECK(half * rl_integral_power(0.5, 0.5, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rl_integral_power(0.5, 0.0, 2.0, 2.0) == 0.0);
}

TEST_CASE("rl_integral_power rejects mu <= -1") {
    CHECK_THROWS_AS(rl_integral_power(0.5, -1.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(rl_integral_power(0.0, 1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("rl_integral_quad examples") {
    const auto one = grid(0, 1, 1024, [](double) { return 1.0; });
    CHECK(std::abs(rl_integral_quad(one, 0.5)[1024] - oracle::rgamma(1.5)) < 1e-6);
    CHECK(rl_integral_quad(one, 0.5)[0] == 0.0);

    const auto lin = grid(0, 1, 1024, [](double t) { return t; });
    CHECK(std::abs(rl_integral_quad(lin, 1.0)[1024] - 0.5) < 1e-10);

    const auto sq = grid(0, 1, 2048, [](double t) { return t * t; });
    CHECK(std::abs(rl_integral_quad(sq, 0.7)[2048] - oracle::gamma(3.0) / oracle::gamma(3.7)) < 1e-5);
}

TEST_CASE("rl_derivative_quad examples") {
    const auto lin = grid(0, 1, 1024, [](double t) { return t; });
    CHECK(max_error(rl_derivative_quad(lin, 1.0), [](double) { return 1.0; }, 0.01, 0.99) < 1e-8);

    const auto lin2 = grid(0, 1, 2048, [](double t) { return t; });
    CHECK(max_error(rl_derivative_quad(lin2, 0.5), [](double t) { return std::sqrt(t) * oracle::rgamma(1.5); }, 0.05,
                    0.95) < 2e-3);

    const auto one = grid(0, 1, 4096, [](double) { return 1.0; });
    CHECK(max_error(rl_derivative_quad(one, 0.5), [](double t) { return oracle::rgamma(0.5) / std::sqrt(t); }, 0.25,
                    1.0) < 5e-3);
}

TEST_CASE("rl_derivative_quad needs enough nodes") {
    const auto coarse = grid(0, 1, 3, [](double t) { return t; });
    CHECK_THROWS_AS(rl_derivative_quad(coarse, 0.5), DomainError);
    CHECK_THROWS_AS(finite_difference(coarse, 2), DomainError);
    const auto ok = grid(0, 1, 6, [](double t) { return t * t; });
    const auto d2 = finite_difference(ok, 2);
    for (std::size_t i = 0; i < d2.size(); ++i) CHECK(d2[i] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("finite_difference is second order on smooth data") {
    for (int m = 1; m <= 3; ++m) {
        auto err = [m](std::size_t n) {
            const auto f = grid(0, 1, n, [](double t) { return std::sin(2 * t); });
            const auto d = finite_difference(f, m);
            double worst = 0.0;
            for (std::size_t i = 0; i < d.size(); ++i) {
                const double t = d.node(i);
                const double exact = m == 1 ? 2 * std::cos(2 * t) : m == 2 ? -4 * std::sin(2 * t) : -8 * std::cos(2 * t);
                worst = std::max(worst, std::abs(d[i] - exact));
            }
            return worst;
        };
        CHECK(err(100) / err(200) > 3.5);
    }
}

TEST_CASE("property: quadrature converges at order about two") {
    for (double alpha : {0.3, 0.5, 0.8}) {
        auto err = [alpha](std::size_t n) {
            const auto f = grid(0, 1, n, [](double t) { return t * t; });
            return max_error(rl_integral_quad(f, alpha),
                             [alpha](double t) { return 2.0 * oracle::rgamma(alpha + 3.0) * std::pow(t, alpha + 2.0); },
                             0.0, 1.0);
        };
        for (std::size_t n : {128u, 512u}) CHECK(err(n) / err(2 * n) >= 3.0);
    }
}

TEST_CASE("property: linearity") {
    gen::Gen g(41);
    for (int trial = 0; trial < 10; ++trial) {
        const double alpha = g.uniform(0.1, 2.5);
        const double k1 = g.uniform(-3, 3), k2 = g.uniform(-3, 3);
        const auto f1 = grid(0, 1, 256, [&](double t) { return std::cos(k1 * t); });
        const auto f2 = grid(0, 1, 256, [&](double t) { return std::exp(k2 * t); });
        const double c1 = g.uniform(-2, 2), c2 = g.uniform(-2, 2);
        std::vector<double> mix(f1.size());
        for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = c1 * f1[i] + c2 * f2[i];
        const auto lhs = rl_integral_quad(SampledFunction(0, 1, mix), alpha);
        const auto r1 = rl_integral_quad(f1, alpha), r2 = rl_integral_quad(f2, alpha);
        double scale = 0.0, worst = 0.0;
        for (std::size_t i = 0; i < mix.size(); ++i) {
            scale = std::max(scale, std::abs(c1 * r1[i]) + std::abs(c2 * r2[i]));
            worst = std::max(worst, std::abs(lhs[i] - (c1 * r1[i] + c2 * r2[i])));
        }
        CHECK(worst <= 1e-14 * scale);

        // scaling by a power of two is exact
        std::vector<double> twice(f1.size());
        for (std::size_t i = 0; i < twice.size(); ++i) twice[i] = 4.0 * f1[i];
        const auto s = rl_integral_quad(SampledFunction(0, 1, twice), alpha);
        bool exact = true;
        for (std::size_t i = 0; i < s.size(); ++i) exact = exact && s[i] == 4.0 * r1[i];
        CHECK(exact);
    }
}

TEST_CASE("property: RL composition") {
    const auto f = grid(0, 1, 2048, [](double t) { return t; });
    const auto twice = rl_integral_quad(rl_integral_quad(f, 0.5), 0.5);
    const auto once = rl_integral_quad(f, 1.0);
    CHECK(max_abs_diff(twice, once) < 1e-4);
}

TEST_CASE("property: quadrature against tanh-sinh on random smooth data") {
    gen::Gen g(43);
    for (int trial = 0; trial < 8; ++trial) {
        const double alpha = g.uniform(0.1, 2.0);
        const double k = g.uniform(-4, 4);
        const double a = g.uniform(-1, 1);
        const double b = a + g.uniform(0.5, 2.0);
        const auto fn = [k](double t) { return std::cos(k * t) + t; };
        const auto r = rl_integral_quad(grid(a, b, 2048, fn), alpha);
        for (std::size_t i : {512u, 1024u, 2048u}) {
            CHECK(std::abs(r[i] - oracle::rl_integral(alpha, fn, a, r.node(i))) < 1e-5);
        }
    }
}

TEST_CASE("product weights integrate linear data exactly") {
    gen::Gen g(47);
    for (int trial = 0; trial < 10; ++trial) {
        const double nu = g.uniform(0.05, 4.0);
        const double h = g.uniform(1e-3, 0.5);
        const std::size_t n = 50;
        const auto w = uniform_weights(nu, h, n);
        std::vector<double> phi(n + 1);
        for (std::size_t i = 0; i <= n; ++i) phi[i] = 1.0 + 0.5 * h * i;
        const auto out = convolve(w, phi);
        const double t = n * h;
        // int_0^t (t-s)^(nu-1) (1 + s/2) ds
        const double exact = std::pow(t, nu) / nu + 0.5 * std::pow(t, nu + 1) / (nu * (nu + 1));
        CHECK(out[n] == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("SampledFunction and CSV") {
    CHECK_THROWS_AS(SampledFunction(0, 1, {1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(SampledFunction(0, 1, {1.0, NAN, 2.0}), DomainError);
    CHECK_THROWS_AS(SampledFunction(1, 1, {1.0, 1.0, 2.0}), DomainError);

    const auto f = grid(0.25, 1.75, 6, [](double t) { return std::exp(t) / 3.0; });
    CHECK(f.node(6) == 1.75);
    std::stringstream io;
    write_csv(io, f);
    CHECK(io.str().rfind("t,value\n", 0) == 0);
    const auto back = read_csv_on_grid(io, 0.25, 1.75, 6);
    CHECK(back.values() == f.values());

    const SampledFunction partial(0, 1, {0.0, 2.0, 3.0, 4.0}, 1);
    std::stringstream io2;
    write_csv(io2, partial);
    const auto rows = read_csv(io2);
    CHECK(rows.size() == 3);
    std::stringstream again;
    write_csv(again, partial);
    const auto back2 = read_csv_on_grid(again, 0, 1, 3);
    CHECK(back2.first_node() == 1);
    CHECK(back2[3] == 4.0);

    std::stringstream off("t,value\n0,1\n0.4,2\n1,3\n");
    CHECK_THROWS_AS(read_csv_on_grid(off, 0, 1, 2), DomainError);
    std::stringstream bad("t,value\n0,1\n0.5,x\n");
    CHECK_THROWS_AS(read_csv(bad), ParseError);
}

TEST_CASE("ClosedFormFunction") {
    CHECK_THROWS_AS(ClosedFormFunction::power(-1.0), DomainError);
    const auto p = ClosedFormFunction::power(2.5, 1.0);
    CHECK(p(2.0) == 1.0);
    CHECK(p.derivative(1, 2.0) == doctest::Approx(2.5));
    CHECK(p.derivative(3, 2.0) == doctest::Approx(2.5 * 1.5 * 0.5));
    const auto poly = ClosedFormFunction::polynomial({1, 2, 3});
    CHECK(poly(2.0) == 17.0);
    CHECK(poly.derivative(2, 5.0) == 6.0);
    CHECK(poly.derivative(3, 5.0) == 0.0);
    const auto e = ClosedFormFunction::exponential(-2.0);
    CHECK(e.derivative(2, 0.5) == doctest::Approx(4.0 * std::exp(-1.0)));
    CHECK(ClosedFormFunction::constant(3.0).derivative(1, 0.2) == 0.0);
}
