#include "greensphere/query.hpp"
#include "greensphere/verify.hpp"

#include <benchmark/benchmark.h>

using namespace greensphere;

namespace {

Engine& engine() {
    static Engine instance{Params{}};
    return instance;
}

void BM_NormalizeTriple(benchmark::State& state) {
    const GreenRing& green = engine().green();
    GenWord word{GenName{Family::Mu, 0, 0}, GenName{Family::Mu, 0, 0}, GenName{Family::Mu, 1, -1}};
    for (auto _ : state) benchmark::DoNotOptimize(green.normalize(word));
}
BENCHMARK(BM_NormalizeTriple);

void BM_GroupLookup(benchmark::State& state) {
    const GreenRing& green = engine().green();
    long long s = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(green.group(s, 3));
        s = (s + 8) % 64;
    }
}
BENCHMARK(BM_GroupLookup);

void BM_SmithNormalForm(benchmark::State& state) {
    IntMat m(4, 4);
    long long seed = 7;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            seed = seed * 1103515245 + 12345;
            m.at(i, j) = (seed >> 16) % 64 - 32;
        }
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm);

void BM_HfpssCell(benchmark::State& state) {
    const KORing& ko = engine().ko();
    for (auto _ : state) {
        benchmark::DoNotOptimize(ko.psi_minus_one_matrix(7, 3));
        benchmark::DoNotOptimize(ko.psi_minus_one_matrix(8, 4));
    }
}
BENCHMARK(BM_HfpssCell);

void BM_E2Page(benchmark::State& state) {
    const KORing& ko = engine().ko();
    for (auto _ : state) benchmark::DoNotOptimize(ko.e2_page(4, 4, 2));
}
BENCHMARK(BM_E2Page);

}  // namespace

BENCHMARK_MAIN();
