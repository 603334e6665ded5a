#include <benchmark/benchmark.h>

#include <cmath>

#include "genfrac/cauchy.hpp"
#include "genfrac/kernel.hpp"
#include "genfrac/operator.hpp"
#include "genfrac/psi.hpp"
#include "genfrac/special.hpp"

using namespace genfrac;

namespace {

GenOperator prabhakar_op() {
    return GenOperator(parse_kernel_spec("prabhakar:rho=1.5,omega=-0.3"), OrderPair(0.7, 0.9), 0.0, 1.0);
}

SampledFunction smooth(double a, double b, std::size_t n) {
    return SampledFunction::sample(a, b, n, [](double t) { return std::cos(3 * t) + t; });
}

void BM_Gamma(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(genfrac::gamma(x));
        x = x > 30 ? 0.1 : x + 0.37;
    }
}
BENCHMARK(BM_Gamma);

void BM_IntegralSeries(benchmark::State& state) {
    const auto op = prabhakar_op();
    const auto f = smooth(0, 1, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(integral_series(op, f));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IntegralSeries)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

void BM_IntegralDirect(benchmark::State& state) {
    const auto op = prabhakar_op();
    const auto f = smooth(0, 1, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(integral_direct(op, f));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IntegralDirect)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

void BM_Derivative(benchmark::State& state) {
    const DerivOperator d(prabhakar_op(), DerivativeFlavor::rl_type);
    const auto f = smooth(0, 1, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(derivative(d, f));
}
BENCHMARK(BM_Derivative)->Arg(1024)->Arg(2048);

void BM_ReciprocalKernel(benchmark::State& state) {
    const auto k = parse_kernel_spec("prabhakar:rho=1.5,omega=-0.3");
    for (auto _ : state) {
        benchmark::DoNotOptimize(reciprocal_kernel(k, OrderPair(0.7, 0.9), 1, static_cast<std::size_t>(state.range(0))));
    }
}
BENCHMARK(BM_ReciprocalKernel)->Arg(16)->Arg(64);

void BM_PsiIntegral(benchmark::State& state) {
    const GenOperator op(parse_kernel_spec("prabhakar:rho=1.5,omega=-0.3"), OrderPair(0.7, 0.9), 1.0, 2.5);
    const auto f = smooth(1.0, 2.5, static_cast<std::size_t>(state.range(0)));
    const auto psi = PsiFunction::log();
    for (auto _ : state) benchmark::DoNotOptimize(psi_integral(op, psi, f));
}
BENCHMARK(BM_PsiIntegral)->Arg(512)->Arg(1024);

void BM_SolveCauchy(benchmark::State& state) {
    CauchyProblem p(parse_kernel_spec("prabhakar:rho=1,omega=-1"));
    p.alpha = 0.5;
    p.beta = 1.0;
    p.gamma = 1.0;
    p.constants = {1.0};
    p.rhs = [](double t, double u) { return std::sin(t) - 0.5 * u; };
    p.lipschitz = 0.5;
    p.b = 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_cauchy(p, static_cast<std::size_t>(state.range(0)), 1e-10, 200));
    }
}
BENCHMARK(BM_SolveCauchy)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
