#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "tnmf/dense_matrix.hpp"
#include "tnmf/nmf.hpp"
#include "tnmf/tikhonov.hpp"

namespace {

tnmf::DenseMatrix random_matrix(std::size_t rows, std::size_t cols,
                                std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    std::uniform_real_distribution<double> dist(0.1, 2.0);
    tnmf::DenseMatrix m(rows, cols);
    for (double& v : m.values()) v = dist(engine);
    return m;
}

void bench_matmul(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const tnmf::DenseMatrix a = random_matrix(n, n, 1);
    const tnmf::DenseMatrix b = random_matrix(n, n, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tnmf::matmul(a, b));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n * n * n));
}
BENCHMARK(bench_matmul)->Arg(32)->Arg(64)->Arg(128);

void bench_gradient(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    const std::size_t n = m * 3 / 4;
    const std::size_t r = 8;
    const tnmf::DenseMatrix a = random_matrix(m, n, 3);
    const tnmf::DenseMatrix b = random_matrix(m, r, 4);
    const tnmf::DenseMatrix c = random_matrix(r, n, 5);
    const tnmf::RegParams params{std::vector<double>(m, 0.1),
                                 std::vector<double>(n, 0.1)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(tnmf::gradient_b(a, b, c, params));
        benchmark::DoNotOptimize(tnmf::gradient_c(a, b, c, params));
    }
}
BENCHMARK(bench_gradient)->Arg(64)->Arg(128)->Arg(256);

void bench_additive_step(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    const std::size_t n = m * 3 / 4;
    const std::size_t r = 8;
    const tnmf::DenseMatrix a = random_matrix(m, n, 6);
    const tnmf::FactorPair factors{random_matrix(m, r, 7), random_matrix(r, n, 8)};
    const tnmf::RegParams params{std::vector<double>(m, 0.1),
                                 std::vector<double>(n, 0.1)};
    tnmf::SolverConfig config = tnmf::default_config(r, m, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tnmf::additive_step_b(a, factors, params, config));
        benchmark::DoNotOptimize(tnmf::additive_step_c(a, factors, params, config));
    }
}
BENCHMARK(bench_additive_step)->Arg(64)->Arg(128)->Arg(256);

void bench_full_iteration(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    const std::size_t n = m * 3 / 4;
    const std::size_t r = 8;
    const tnmf::DenseMatrix a = random_matrix(m, n, 9);
    tnmf::SolverConfig config = tnmf::default_config(r, m, n);
    config.max_iter = 1;
    config.tol = 0.0;
    const tnmf::FactorPair init = tnmf::random_init(m, n, r, 10);
    const tnmf::RegParams params = tnmf::init_regularization(m, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tnmf::factorize(a, config, init, params));
    }
}
BENCHMARK(bench_full_iteration)->Arg(64)->Arg(128)->Arg(256);

void bench_tikhonov_solve(benchmark::State& state) {
    const std::size_t rows = static_cast<std::size_t>(state.range(0));
    const std::size_t cols = rows / 2;
    std::mt19937_64 engine(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    tnmf::DenseMatrix design(rows, cols);
    for (double& v : design.values()) v = dist(engine);
    std::vector<double> y(rows);
    for (double& v : y) v = dist(engine);
    const tnmf::LinearInverseProblem problem{design, y};
    for (auto _ : state) {
        benchmark::DoNotOptimize(tnmf::solve_regularized(problem, 0.5));
    }
}
BENCHMARK(bench_tikhonov_solve)->Arg(32)->Arg(64)->Arg(128);

} // namespace

BENCHMARK_MAIN();
