#include <dln/dln.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

dln::DataMoments moments(int d) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::MatrixXd g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = n(rng);
    Eigen::MatrixXd a0 = g * g.transpose() / d + 0.1 * Eigen::MatrixXd::Identity(d, d);
    Eigen::VectorXd exy(d);
    for (int i = 0; i < d; ++i) exy(i) = n(rng);
    const double fit = exy.dot(a0.ldlt().solve(exy));
    return dln::make_moments(0.5 * (a0 + a0.transpose()), exy, fit + 1.0);
}

dln::Architecture arch(int depth, int d, int width) {
    return dln::HomogeneousArchitecture{depth, d, width, 0.5, 0.01}.expand();
}

// Args: depth, input dim, width.
void BM_ExpectedLoss(benchmark::State& state) {
    const auto m = moments(static_cast<int>(state.range(1)));
    const auto a = arch(static_cast<int>(state.range(0)), m.dim, static_cast<int>(state.range(2)));
    const auto p = dln::assemble(0.5, a, m).params;
    for (auto _ : state) benchmark::DoNotOptimize(dln::expected_loss(p, a, m));
}
BENCHMARK(BM_ExpectedLoss)->Args({1, 8, 8})->Args({2, 8, 32})->Args({4, 16, 64});

void BM_LossAndGradient(benchmark::State& state) {
    const auto m = moments(static_cast<int>(state.range(1)));
    const auto a = arch(static_cast<int>(state.range(0)), m.dim, static_cast<int>(state.range(2)));
    const auto p = dln::assemble(0.5, a, m).params;
    for (auto _ : state) benchmark::DoNotOptimize(dln::loss_and_gradient(p, a, m));
}
BENCHMARK(BM_LossAndGradient)->Args({1, 8, 8})->Args({2, 8, 32})->Args({4, 16, 64});

void BM_SolveB(benchmark::State& state) {
    const auto m = moments(static_cast<int>(state.range(1)));
    const auto a = arch(static_cast<int>(state.range(0)), m.dim, 4);
    for (auto _ : state) benchmark::DoNotOptimize(dln::solve_b(a, m));
}
BENCHMARK(BM_SolveB)->Args({1, 8})->Args({2, 8})->Args({6, 8})->Args({2, 64});

void BM_GlobalMinimum(benchmark::State& state) {
    const auto m = moments(8);
    const auto a = arch(static_cast<int>(state.range(0)), m.dim, 4);
    for (auto _ : state) benchmark::DoNotOptimize(dln::global_minimum(a, m));
}
BENCHMARK(BM_GlobalMinimum)->Arg(1)->Arg(2)->Arg(4);

void BM_Classify(benchmark::State& state) {
    const auto m = moments(8);
    const auto a = arch(2, m.dim, 4);
    for (auto _ : state) benchmark::DoNotOptimize(dln::classify(a, m, state.range(0) != 0));
}
BENCHMARK(BM_Classify)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
