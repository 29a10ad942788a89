#include <benchmark/benchmark.h>

#include "pollaczek/approx.hpp"
#include "pollaczek/gaussian_walk.hpp"
#include "pollaczek/lst.hpp"
#include "pollaczek/moments.hpp"
#include "pollaczek/simulate.hpp"
#include "pollaczek/zeta.hpp"

using namespace pollaczek;

namespace {

QueueInstance headline(double rho) {
    return {gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5), rho};
}

void BM_ClassicalCumulant(benchmark::State& state) {
    QueueInstance q = headline(1.0 - 1.0 / double(state.range(0)));
    const double x0 = -1.0 / sigma_alpha_sq(q);
    for (auto _ : state) {
        const auto ci = classical_integrand(q, 1, x0);
        benchmark::DoNotOptimize(cumulant_contour_integral(ci, {}).value);
    }
}
BENCHMARK(BM_ClassicalCumulant)->Arg(10)->Arg(100)->Arg(1000);

void BM_GaussianRegimeMoments(benchmark::State& state) {
    ThinnedQueueInstance tq = make_thinned(gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5),
                                           state.range(0), 1.0, Regime::NdGaussian);
    for (auto _ : state) benchmark::DoNotOptimize(exact_scaled_moments(tq, 5).moments.m(5));
}
BENCHMARK(BM_GaussianRegimeMoments)->Arg(10)->Arg(1000);

void BM_SaddleNewton(benchmark::State& state) {
    QueueInstance q = headline(0.999);
    for (auto _ : state) benchmark::DoNotOptimize(find_saddle_point(q).zeta_sp);
}
BENCHMARK(BM_SaddleNewton);

void BM_ZetaSeriesCumulants(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(mgw_cumulants_zeta(1.0, 5).c(5));
}
BENCHMARK(BM_ZetaSeriesCumulants);

void BM_MgwIntegralCumulants(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(mgw_cumulants_integral(1.0, 5).c(5));
}
BENCHMARK(BM_MgwIntegralCumulants);

void BM_RiemannZeta(benchmark::State& state) {
    double s = -0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(riemann_zeta(s));
        s = s > -40.0 ? s - 0.5 : -0.5;
    }
}
BENCHMARK(BM_RiemannZeta);

void BM_EulerInversion(benchmark::State& state) {
    const LSTHandle h = make_exact_lst(headline(0.9));
    double t = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(invert_cdf_at(h, t));
        t = t < 6.0 ? t + 0.1 : 0.3;
    }
}
BENCHMARK(BM_EulerInversion);

void BM_LindleyReplication(benchmark::State& state) {
    QueueInstance q = headline(0.9);
    SimConfig cfg;
    cfg.warmup = 1000;
    cfg.customers = 100000;
    cfg.replications = 2;
    for (auto _ : state) {
        cfg.seed += 1;
        benchmark::DoNotOptimize(simulate_waiting(q, cfg).moments[0].mean);
    }
}
BENCHMARK(BM_LindleyReplication);

}  // namespace

BENCHMARK_MAIN();
