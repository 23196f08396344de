/*
 * bench_distance.cpp - micro benchmarks of the distance pipeline: the
 * pointwise gauge, the general formula, the multi-start search, contact
 * objects, and one ascent step of the maximizer.
 */
#include <benchmark/benchmark.h>

#include "discdist/basis_matrices.hpp"
#include "discdist/bombieri.hpp"
#include "discdist/classify.hpp"
#include "discdist/corpus.hpp"
#include "discdist/distance.hpp"
#include "discdist/maximize.hpp"
#include "discdist/rng.hpp"
#include "discdist/univariate.hpp"

namespace {

using namespace discdist;

void BM_delta(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    Rng rng(11);
    const HomogeneousPoly p = rng.poly(n, d);
    const SpherePoint x = rng.sphere_point(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta(p, x));
    }
}
BENCHMARK(BM_delta)->Args({3, 4})->Args({3, 8})->Args({4, 6});

void BM_distance_general_at(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    Rng rng(12);
    const HomogeneousPoly p = rng.poly(n, d);
    const Eigen::VectorXd x = rng.sphere_point(n).coords();
    for (auto _ : state) {
        benchmark::DoNotOptimize(distance_general_at(p, x));
    }
}
BENCHMARK(BM_distance_general_at)->Args({3, 4})->Args({4, 4});

void BM_distance_bombieri(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const HomogeneousPoly p = nested_chebyshev(d);
    SearchConfig cfg;
    cfg.restarts = 16;
    cfg.seed = 13;
    for (auto _ : state) {
        benchmark::DoNotOptimize(distance_bombieri(p, cfg));
    }
}
BENCHMARK(BM_distance_bombieri)->Arg(2)->Arg(4)->Arg(6)
    ->Unit(benchmark::kMillisecond);

void BM_contact_radius(benchmark::State& state) {
    const HomogeneousPoly p = make_T(2, 4);
    SearchConfig cfg;
    cfg.restarts = 16;
    cfg.seed = 14;
    const DistanceReport rep = distance_bombieri(p, cfg);
    const SpherePoint c = rep.minimizers.front();
    for (auto _ : state) {
        benchmark::DoNotOptimize(contact_radius(p, c));
    }
}
BENCHMARK(BM_contact_radius);

void BM_maximizer_step(benchmark::State& state) {
    const HomogeneousPoly c3 = make_C(3);
    HomogeneousPoly p = c3 * (1.0 / bombieri_norm(c3));
    p += 0.05 * random_orthogonal_direction({c3}, 2, 3, 15);
    MaximizerConfig cfg;
    cfg.search.restarts = 16;
    cfg.search.seed = 16;
    const MaximizerState st = initial_state(p, cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(step(st, 1.0, cfg));
    }
}
BENCHMARK(BM_maximizer_step)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
