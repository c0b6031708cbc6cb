// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>

#include "folia/dynamics.hpp"
#include "folia/linalg.hpp"
#include "folia/parse.hpp"

using namespace folia;

namespace {

Matrix random_matrix(int rows, int cols) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-9, 9);
    Matrix m(rows, std::vector<GaussianRational>(cols));
    for (auto& row : m)
        for (auto& e : row) e = GaussianRational(mpq_class(d(rng)), mpq_class(d(rng)));
    return m;
}

void BM_rref_serial(benchmark::State& st) {
    auto m0 = random_matrix(st.range(0), st.range(0) + 4);
    for (auto _ : st) {
        Matrix m = m0;
        benchmark::DoNotOptimize(rref_serial(m));
    }
}

void BM_rref_parallel(benchmark::State& st) {
    auto m0 = random_matrix(st.range(0), st.range(0) + 4);
    for (auto _ : st) {
        Matrix m = m0;
        benchmark::DoNotOptimize(rref_parallel(m));
    }
}

std::vector<LiftJob> loop_jobs(int n) {
    std::vector<LiftJob> jobs;
    for (int k = 0; k < n; ++k)
        jobs.push_back({PathSpec::arc(0, 0.1, 0, 6.283185307179586), {cplx(0.01 * (k + 1), 0.0)}});
    return jobs;
}

VectorField saddle() {
    VarList v{"x", "y"};
    return VectorField::from_polys(v, {parse_poly("x + y^2", v), parse_poly("-3*y", v)});
}

void BM_lifts_serial(benchmark::State& st) {
    auto X = saddle();
    auto jobs = loop_jobs(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(lift_paths_serial(X, 1, jobs));
}

void BM_lifts_parallel(benchmark::State& st) {
    auto X = saddle();
    auto jobs = loop_jobs(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(lift_paths_parallel(X, 1, jobs));
}

} // namespace

BENCHMARK(BM_rref_serial)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref_parallel)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lifts_serial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lifts_parallel)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
