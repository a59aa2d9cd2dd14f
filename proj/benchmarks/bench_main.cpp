#include <benchmark/benchmark.h>

#include "gsync/analysis.hpp"
#include "gsync/gen.hpp"
#include "gsync/solver.hpp"

namespace {

gsync::Instance make_so3_instance(int n, double p, std::uint64_t seed) {
    gsync::NoiseConfig noise;
    noise.model = gsync::NoiseModel::AdditiveGaussian;
    noise.sigma = 0.05;
    return gsync::gen_instance(gsync::GroupSpec::special_orthogonal(3), {n, p}, noise, seed);
}

void bm_project_so3(benchmark::State& state) {
    gsync::Rng rng(7);
    Eigen::MatrixXd X(3, 3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) X(a, b) = rng.gaussian();
    for (auto _ : state)
        benchmark::DoNotOptimize(gsync::project_special_orthogonal(X).mat);
}
BENCHMARK(bm_project_so3);

void bm_project_permutation(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    gsync::Rng rng(7);
    Eigen::MatrixXd X(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) X(a, b) = rng.gaussian();
    for (auto _ : state)
        benchmark::DoNotOptimize(gsync::project_permutation(X).mat);
}
BENCHMARK(bm_project_permutation)->Arg(10)->Arg(30)->Arg(50);

void bm_blockmatvec(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const gsync::Instance instance = make_so3_instance(n, 0.5, 11);
    const gsync::BlockColumn& G = *instance.ground_truth;
    for (auto _ : state)
        benchmark::DoNotOptimize(gsync::blockmatvec(instance.C, G).data);
}
BENCHMARK(bm_blockmatvec)->Arg(100)->Arg(300);

void bm_spectral_plus_gpm(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const gsync::Instance instance = make_so3_instance(n, 0.5, 13);
    for (auto _ : state) {
        gsync::SolveConfig cfg;
        cfg.record_trace = false;
        const auto g0 = gsync::spectral_estimator(instance);
        benchmark::DoNotOptimize(gsync::gpm(instance, g0, cfg).estimate.data);
    }
}
BENCHMARK(bm_spectral_plus_gpm)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
