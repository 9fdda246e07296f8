// Microbenchmarks for the hot paths: field arithmetic, determinants, the
// minor scan behind the MDP check, and the brute-force column distance.
// Run: build/benchmarks/mdpcc_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include "mdpcc/distance.hpp"
#include "mdpcc/matrix.hpp"
#include "mdpcc/minor_criterion.hpp"
#include "mdpcc/rng.hpp"
#include "mdpcc/state_space.hpp"

#include <cstdint>
#include <vector>

using namespace mdpcc;

namespace {

FieldMatrix random_matrix(const Field& f, std::uint32_t n, std::uint64_t seed) {
    SplitMix64 g(seed);
    FieldMatrix M(f, n, n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
            M.set_code(i, j, static_cast<std::uint32_t>(g.below(f.order())));
    return M;
}

void field_mul(benchmark::State& state, const Field& f) {
    SplitMix64 g(11);
    std::vector<std::uint32_t> a(256), b(256);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = static_cast<std::uint32_t>(g.below(f.order()));
        b[i] = static_cast<std::uint32_t>(g.below(f.order()));
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.mul(a[i & 255], b[i & 255]));
        ++i;
    }
}

void BM_field_mul_gf7(benchmark::State& state) { field_mul(state, Field(7)); }
void BM_field_mul_gf256(benchmark::State& state) { field_mul(state, Field(2, 8)); }

void BM_determinant(benchmark::State& state) {
    Field f(5);
    const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
    FieldMatrix M = random_matrix(f, n, 77);
    for (auto _ : state) benchmark::DoNotOptimize(determinant(M));
}

void BM_is_mdp(benchmark::State& state) {
    // full minor scan of T_L for a (2,1,2) system over GF(5), L = 4
    StateSpace sys = random_system(CodeParams(2, 1, 2), Field(5), 3);
    for (auto _ : state) benchmark::DoNotOptimize(is_mdp(sys));
}

void BM_column_distance(benchmark::State& state) {
    // branch-and-bound trajectory scan at j = L for a (3,2,2) system
    StateSpace sys = random_system(CodeParams(3, 2, 2), Field(5), 5);
    const std::uint32_t j = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(column_distance_bruteforce(sys, j));
}

void BM_minor_stream(benchmark::State& state) {
    // enumeration alone: all non-trivially-zero minors of T_4 at (2,1)
    for (auto _ : state) {
        std::uint64_t count = 0;
        for (std::uint32_t r = 1; r <= 5; ++r) {
            NontrivialMinorStream stream(4, 2, 1, r);
            while (stream.next()) ++count;
        }
        benchmark::DoNotOptimize(count);
    }
}

BENCHMARK(BM_field_mul_gf7);
BENCHMARK(BM_field_mul_gf256);
BENCHMARK(BM_determinant)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(BM_is_mdp);
BENCHMARK(BM_column_distance)->Arg(1)->Arg(2)->Arg(3);
BENCHMARK(BM_minor_stream);

} // namespace

BENCHMARK_MAIN();
