#include <benchmark/benchmark.h>

#include "fracid/basis.hpp"
#include "fracid/directsim.hpp"
#include "fracid/identify.hpp"
#include "fracid/problems.hpp"
#include "fracid/regularize.hpp"

using namespace fracid;

namespace {

void BM_GramMatrix(benchmark::State& state) {
    const DesignBasis basis(uniform_betas(3), static_cast<int>(state.range(0)), 0.99, 2e-3);
    for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(basis));
}
BENCHMARK(BM_GramMatrix)->Arg(6)->Arg(9);

void BM_TikhonovSolve(benchmark::State& state) {
    const DesignBasis basis(uniform_betas(3), 6, 0.99, 2e-3);
    const auto times = uniform_times();
    const Eigen::MatrixXd E = design_matrix(basis, times);
    const Eigen::MatrixXd H = gram_matrix(basis);
    const Problem p = example1_truth(0.5);
    Eigen::VectorXd y(static_cast<Eigen::Index>(times.size()));
    for (std::size_t k = 0; k < times.size(); ++k) y[static_cast<Eigen::Index>(k)] = p.psi(times[k]);
    for (auto _ : state) benchmark::DoNotOptimize(tikhonov_solve(E, H, y, 1e-6));
}
BENCHMARK(BM_TikhonovSolve);

void BM_Pipeline(benchmark::State& state) {
    const Problem p = example1_truth(0.5);
    NoiseSpec noise;
    noise.kind = NoiseKind::FTN;
    noise.nu1_for_shape = p.nu1;
    const Observation obs = sample_observation(p.psi, uniform_times(), noise);
    for (auto _ : state) benchmark::DoNotOptimize(identify_pipeline(obs, p.model, ReconConfig{}));
}
BENCHMARK(BM_Pipeline)->Unit(benchmark::kMillisecond);

void BM_DirectSolve(benchmark::State& state) {
    DirectConfig c;
    c.nx = 64;
    c.nt = static_cast<int>(state.range(0));
    c.horizon = 0.5;
    c.terms = {{0.5, PowerSeries::constant(0.5), 1.0}, {0.25, PowerSeries::constant(0.25), -1.0}};
    c.kernel = PowerSeries::monomial(1.0, -0.5);
    c.forcing = [](double, double) { return 1.0; };
    c.initial = [](double x) { return x * (1.0 - x); };
    for (auto _ : state) benchmark::DoNotOptimize(solve_direct(c));
}
BENCHMARK(BM_DirectSolve)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
