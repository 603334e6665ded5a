#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "gen.hpp"
#include "genfrac/calculus_rules.hpp"
#include "genfrac/errors.hpp"
#include "genfrac/psi.hpp"
#include "oracles.hpp"

using namespace genfrac;

namespace {

SampledFunction grid(double a, double b, std::size_t n, const std::function<double(double)>& f) {
    return SampledFunction::sample(a, b, n, f);
}

GenOperator make_op(const std::string& kernel, double alpha, double beta, double a, double b) {
    return GenOperator(parse_kernel_spec(kernel), OrderPair(alpha, beta), a, b);
}

const double e = std::exp(1.0);

}  // namespace

TEST_CASE("parse_psi_spec") {
    CHECK(parse_psi_spec("identity").kind() == PsiFunction::Kind::identity);
    CHECK(parse_psi_spec("log").kind() == PsiFunction::Kind::log);
    const auto p = parse_psi_spec("power:rho=0.5");
    CHECK(p.kind() == PsiFunction::Kind::power_shifted);
    CHECK(p(4.0) == doctest::Approx(8.0));
    CHECK(p.derivative(4.0) == doctest::Approx(3.0));
    const auto s = parse_psi_spec("powsigma:sigma=2");
    CHECK(s.kind() == PsiFunction::Kind::power);
    CHECK(s.parameter() == 2.0);
    CHECK_THROWS_AS(parse_psi_spec("sqrt"), ParseError);
    CHECK_THROWS_AS(parse_psi_spec("power:rho=x"), ParseError);
    CHECK_THROWS_AS(parse_psi_spec("power:rho=-1"), DomainError);
    CHECK_THROWS_AS(parse_psi_spec("powsigma:sigma=0"), DomainError);
}

TEST_CASE("invalid psi") {
    const auto f = grid(0.5, 2, 64, [](double t) { return t; });
    const auto decreasing = PsiFunction::custom([](double t) { return -t; }, [](double) { return -1.0; });
    CHECK_THROWS_AS(psi_integral(make_op("rl", 0.5, 0, 0.5, 2), decreasing, f), DomainError);
    const auto bump = PsiFunction::custom([](double t) { return std::sin(3 * t); },
                                          [](double t) { return 3 * std::cos(3 * t); });
    CHECK_THROWS_AS(psi_integral(make_op("rl", 0.5, 0, 0.5, 2), bump, f), DomainError);

    const auto from_zero = grid(0, 1, 64, [](double t) { return t; });
    CHECK_THROWS_AS(psi_integral(make_op("rl", 0.5, 0, 0, 1), PsiFunction::log(), from_zero), DomainError);
    CHECK_THROWS_AS(hadamard_integral(0.5, from_zero), DomainError);
    CHECK_THROWS_AS(erdelyi_kober_integral(0.5, 1.0, -0.5, from_zero), DomainError);
    CHECK_THROWS_AS(erdelyi_kober_integral(0.5, 1.0, 0.0, f), DomainError);
}

TEST_CASE("psi_integral examples") {
    const char* specs[] = {"rl", "prabhakar:rho=1.5,omega=-0.3", "gpf:rho=0.8", "ab:B=1"};
    const auto f = grid(0, 1, 512, [](double t) { return std::cos(2 * t) + t; });
    for (const char* spec : specs) {
        const auto op = make_op(spec, 0.7, 0.5, 0, 1);
        CHECK(psi_integral(op, PsiFunction::identity(), f).values() == integral_direct(op, f).values());
    }

    const auto one = grid(1, e, 1024, [](double) { return 1.0; });
    const auto h1 = psi_integral(make_op("rl", 1.0, 0, 1, e), PsiFunction::log(), one);
    CHECK(std::abs(h1[1024] - 1.0) < 1e-10);

    const auto lg = grid(1, e, 2048, [](double t) { return std::log(t); });
    const auto h = psi_integral(make_op("rl", 0.5, 0, 1, e), PsiFunction::log(), lg);
    CHECK(oracle::rgamma(2.5) == doctest::Approx(0.752252778).epsilon(1e-9));
    CHECK(std::abs(h[2048] - oracle::rgamma(2.5)) < 1e-5);
}

TEST_CASE("psi_integral against quadrature of the defining integral") {
    const double rho = 1.5, omega = -0.3, alpha = 0.7, beta = 0.9;
    const auto A = [&](double x) { return oracle::mittag_leffler(beta, alpha, rho, omega * x); };
    const auto fn = [](double t) { return std::sin(t) + 1.0; };
    const auto op = make_op("prabhakar:rho=1.5,omega=-0.3", alpha, beta, 1, 2.5);
    const auto out = psi_integral(op, PsiFunction::log(), grid(1, 2.5, 2048, fn));
    const auto psi = [](double t) { return std::log(t); };
    const auto dpsi = [](double t) { return 1.0 / t; };
    for (std::size_t i : {512u, 2048u}) {
        CHECK(std::abs(out[i] - oracle::psi_integral(A, alpha, beta, psi, dpsi, fn, 1.0, out.node(i))) < 1e-4);
    }
}

TEST_CASE("hadamard_integral") {
    const auto one = grid(1, e, 1024, [](double) { return 1.0; });
    CHECK(std::abs(hadamard_integral(1.0, one)[1024] - 1.0) < 1e-10);
    const auto lg = grid(1, e, 2048, [](double t) { return std::log(t); });
    CHECK(std::abs(hadamard_integral(0.5, lg)[2048] - 0.752252778) < 1e-5);
    CHECK(hadamard_integral(0.5, lg).values() ==
          psi_integral(make_op("rl", 0.5, 0, 1, e), PsiFunction::log(), lg).values());
}

TEST_CASE("katugampola_integral") {
    const auto one = grid(0, 1, 1024, [](double) { return 1.0; });
    CHECK(std::abs(katugampola_integral(0.5, 0.0, one)[1024] - oracle::rgamma(1.5)) < 1e-6);
    CHECK(std::abs(katugampola_integral(1.0, 1.0, one)[1024] - 0.5) < 1e-6);
    const auto zk = katugampola_integral(0.7, 0.5, SampledFunction::zeros(0, 1, 64));
    for (double v : zk.values()) CHECK(v == 0.0);
}

TEST_CASE("erdelyi_kober_integral") {
    const auto one = grid(0, 1, 1024, [](double) { return 1.0; });
    const auto ek = erdelyi_kober_integral(0.5, 1.0, 0.0, one);
    CHECK(ek.first_node() == 1);
    for (std::size_t i = 1; i < ek.size(); ++i) CHECK(std::abs(ek[i] - oracle::rgamma(1.5)) < 1e-6);

    const auto unit = erdelyi_kober_integral(1.0, 1.0, 0.0, one);
    for (std::size_t i = 1; i < unit.size(); ++i) CHECK(std::abs(unit[i] - 1.0) < 1e-6);

    const auto zero = erdelyi_kober_integral(0.5, 2.0, 0.5, SampledFunction::zeros(0, 1, 64));
    for (std::size_t i = 1; i < zero.size(); ++i) CHECK(zero[i] == 0.0);

    // sigma = 2, eta = 1, f = t^2 against the defining integral
    const auto sq = grid(0, 1, 2048, [](double t) { return t * t; });
    const auto ek2 = erdelyi_kober_integral(0.6, 2.0, 1.0, sq);
    for (std::size_t i : {512u, 2048u}) {
        const double t = ek2.node(i);
        // v = tau^2 turns the integral into an RL integral of v^2
        const double exact =
            std::pow(t, -3.2) * oracle::rl_integral(0.6, [](double v) { return v * v; }, 0.0, t * t);
        CHECK(std::abs(ek2[i] - exact) < 1e-5);
    }
}

TEST_CASE("psi_leibniz_series") {
    const auto op = make_op("prabhakar:rho=1,omega=-0.5", 0.5, 0.5, 0, 1);
    const auto f = grid(0, 1, 1024, [](double t) { return std::exp(t); });
    std::vector<SampledFunction> g = {grid(0, 1, 1024, [](double t) { return 1 + t * t; }),
                                      grid(0, 1, 1024, [](double t) { return 2 * t; }),
                                      grid(0, 1, 1024, [](double) { return 2.0; })};
    CHECK(psi_leibniz_series(op, PsiFunction::identity(), f, g, 2).values() == leibniz_series(op, f, g, 2).values());

    const auto lg = grid(1, e, 2048, [](double t) { return std::log(t); });
    const auto rl = make_op("rl", 0.5, 0, 1, e);
    const std::vector<SampledFunction> ones = {grid(1, e, 2048, [](double) { return 1.0; }),
                                               SampledFunction::zeros(1, e, 2048)};
    CHECK(max_abs_diff(psi_leibniz_series(rl, PsiFunction::log(), lg, ones, 1),
                       psi_integral(rl, PsiFunction::log(), lg)) < 1e-6);

    // g = log t: its psi-derivatives under psi = log are 1 and 0
    const std::vector<SampledFunction> glog = {lg, grid(1, e, 2048, [](double) { return 1.0; }),
                                               SampledFunction::zeros(1, e, 2048)};
    const auto sq = grid(1, e, 2048, [](double t) { return std::log(t) * std::log(t); });
    CHECK(max_abs_diff(psi_leibniz_series(rl, PsiFunction::log(), lg, glog, 2),
                       psi_integral(rl, PsiFunction::log(), sq)) < 1e-4);
}

TEST_CASE("property: identity psi reproduces the base operator") {
    gen::Gen g(89);
    const char* specs[] = {"rl", "prabhakar:rho=1.5,omega=-0.3", "ab:B=1", "gpf:rho=0.8",
                           "ml:beta=0.8,alpha=0.5,rho=1", "explicit:coeffs=[1,-0.5,0.25]"};
    for (const char* spec : specs) {
        const double a = g.uniform(-1, 1);
        const double b = a + g.uniform(0.3, 1.0);
        const double beta = std::string(spec) == "ab:B=1" ? 0.5 : g.uniform(0.2, 1.0);
        const auto op = make_op(spec, g.uniform(0.2, 1.5), beta, a, b);
        const double w = g.uniform(-4, 4);
        const auto f = grid(a, b, 256, [w](double t) { return std::sin(w * t); });
        INFO(std::string(spec));
        CHECK(psi_integral(op, PsiFunction::identity(), f).values() == integral_direct(op, f).values());
    }
}

TEST_CASE("property: Hadamard power rule") {
    for (int mu : {0, 1, 2}) {
        for (double alpha : {0.5, 1.0}) {
            const double a = 1.5;
            const auto f = grid(a, 4.0, 2048, [&](double t) { return std::pow(std::log(t / a), mu); });
            const auto h = hadamard_integral(alpha, f);
            const double c = oracle::gamma(mu + 1.0) * oracle::rgamma(mu + alpha + 1.0);
            double worst = 0.0;
            for (std::size_t i = 0; i < h.size(); ++i) {
                worst = std::max(worst, std::abs(h[i] - c * std::pow(std::log(h.node(i) / a), mu + alpha)));
            }
            INFO("mu=" << mu << " alpha=" << alpha);
            CHECK(worst < 1e-5);
        }
    }
}

TEST_CASE("property: resampled and nodal paths agree") {
    gen::Gen g(97);
    const char* specs[] = {"rl", "prabhakar:rho=1.5,omega=-0.3", "gpf:rho=0.8", "ml:beta=0.8,alpha=0.5,rho=1"};
    for (const char* spec : specs) {
        for (int trial = 0; trial < 3; ++trial) {
            const int which = g.integer(0, 2);
            const auto psi = which == 0   ? PsiFunction::log()
                             : which == 1 ? PsiFunction::power_shifted(g.uniform(-0.5, 1.5))
                                          : PsiFunction::power(g.uniform(0.5, 2.5));
            const double a = g.uniform(0.5, 1.5);
            const double b = a + g.uniform(0.5, 1.5);
            const auto op = make_op(spec, g.uniform(0.3, 1.2), g.uniform(0.3, 1.0), a, b);
            const double w = g.uniform(-3, 3);
            const auto f = grid(a, b, 2048, [w](double t) { return std::cos(w * t) + 0.5 * t; });
            INFO(std::string(spec) << " psi=" << psi.label());
            CHECK(max_abs_diff(psi_integral(op, psi, f), psi_integral_nodal(op, psi, f)) < 1e-4);
        }
    }
}

TEST_CASE("property: Erdelyi-Kober constancy") {
    gen::Gen g(101);
    for (int trial = 0; trial < 5; ++trial) {
        const double alpha = g.uniform(0.2, 2.0);
        const auto one = grid(0, g.uniform(0.5, 3.0), 1024, [](double) { return 1.0; });
        const auto ek = erdelyi_kober_integral(alpha, 1.0, 0.0, one);
        for (std::size_t i = 1; i < ek.size(); ++i) CHECK(std::abs(ek[i] - oracle::rgamma(alpha + 1)) < 1e-6);
    }
}
