/*
 * bench_algebra.cpp - micro benchmarks of the dense polynomial algebra:
 * evaluation, derivatives, the Bombieri inner product, multiplication,
 * and orthogonal composition.
 */
#include <benchmark/benchmark.h>

#include "discdist/bombieri.hpp"
#include "discdist/poly.hpp"
#include "discdist/rng.hpp"

namespace {

using namespace discdist;

void BM_eval(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    Rng rng(1);
    const HomogeneousPoly p = rng.poly(n, d);
    const Eigen::VectorXd x = rng.sphere_point(n).coords();
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval(p, x));
    }
}
BENCHMARK(BM_eval)->Args({3, 4})->Args({3, 8})->Args({4, 6})->Args({6, 4});

void BM_gradient(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    Rng rng(2);
    const HomogeneousPoly p = rng.poly(n, d);
    const Eigen::VectorXd x = rng.sphere_point(n).coords();
    for (auto _ : state) {
        benchmark::DoNotOptimize(gradient(p, x));
    }
}
BENCHMARK(BM_gradient)->Args({3, 4})->Args({3, 8})->Args({4, 6});

void BM_hessian(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    Rng rng(3);
    const HomogeneousPoly p = rng.poly(n, d);
    const Eigen::VectorXd x = rng.sphere_point(n).coords();
    for (auto _ : state) {
        benchmark::DoNotOptimize(hessian(p, x));
    }
}
BENCHMARK(BM_hessian)->Args({3, 4})->Args({3, 8})->Args({4, 6});

void BM_bombieri_dot(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    Rng rng(4);
    const HomogeneousPoly p = rng.poly(n, d);
    const HomogeneousPoly q = rng.poly(n, d);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bombieri_dot(p, q));
    }
}
BENCHMARK(BM_bombieri_dot)->Args({3, 4})->Args({3, 8})->Args({4, 6});

void BM_product(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    Rng rng(5);
    const HomogeneousPoly p = rng.poly(n, d);
    const HomogeneousPoly q = rng.poly(n, d);
    for (auto _ : state) {
        benchmark::DoNotOptimize(p * q);
    }
}
BENCHMARK(BM_product)->Args({3, 3})->Args({3, 5})->Args({4, 4});

void BM_compose_orthogonal(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    Rng rng(6);
    const HomogeneousPoly p = rng.poly(n, d);
    const OrthogonalMap h = rng.orthogonal(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose_orthogonal(p, h));
    }
}
BENCHMARK(BM_compose_orthogonal)->Args({3, 4})->Args({3, 6})->Args({4, 4});

void BM_pow_linear_form(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    Rng rng(7);
    const Eigen::VectorXd u = rng.sphere_point(n).coords();
    for (auto _ : state) {
        benchmark::DoNotOptimize(pow_linear_form(u, d));
    }
}
BENCHMARK(BM_pow_linear_form)->Args({3, 6})->Args({4, 6});

} // namespace

BENCHMARK_MAIN();
