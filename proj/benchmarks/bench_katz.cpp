#include "katz/corpus.hpp"
#include "katz/engine.hpp"
#include "katz/io.hpp"
#include "katz/transforms.hpp"

#include <benchmark/benchmark.h>

using namespace katz;

namespace {

const std::vector<std::string> kSolvable = {"hypergeometric2", "hypergeometric3", "kloosterman",
                                            "airy",            "gaussian",        "confluent"};

FormalTypeDatum corpus(std::size_t i) { return corpus_entry(kSolvable.at(i)).datum.normalized(); }

void BM_Rig(benchmark::State& state) {
    FormalTypeDatum d = corpus(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(d.rigidity_index());
    state.SetLabel(kSolvable[static_cast<std::size_t>(state.range(0))]);
}
BENCHMARK(BM_Rig)->DenseRange(0, 5);

void BM_EndAtInfinity(benchmark::State& state) {
    FormalType v = corpus(static_cast<std::size_t>(state.range(0))).at(PointP1::infinity());
    for (auto _ : state) benchmark::DoNotOptimize(hom(v, v));
    state.SetLabel(kSolvable[static_cast<std::size_t>(state.range(0))]);
}
BENCHMARK(BM_EndAtInfinity)->DenseRange(0, 5);

void BM_Fourier(benchmark::State& state) {
    FormalTypeDatum d = corpus(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fourier(d));
    state.SetLabel(kSolvable[static_cast<std::size_t>(state.range(0))]);
}
BENCHMARK(BM_Fourier)->DenseRange(0, 5);

void BM_Reduce(benchmark::State& state) {
    FormalTypeDatum d = corpus(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reduce(d));
    state.SetLabel(kSolvable[static_cast<std::size_t>(state.range(0))]);
}
BENCHMARK(BM_Reduce)->DenseRange(0, 5);

void BM_PrintParse(benchmark::State& state) {
    FormalTypeDatum d = corpus(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(parse_datum(print_datum(d)));
    state.SetLabel(kSolvable[static_cast<std::size_t>(state.range(0))]);
}
BENCHMARK(BM_PrintParse)->DenseRange(0, 5);

}  // namespace

BENCHMARK_MAIN();
