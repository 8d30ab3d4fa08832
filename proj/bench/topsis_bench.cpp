#include <benchmark/benchmark.h>

#include <random>

#include "trajplan/mcda/kernels.hpp"
#include "trajplan/mcda/topsis.hpp"

using namespace trajplan::mcda;

namespace {

DecisionMatrix synthetic(std::size_t rows, std::size_t cols, std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> value(0.0, 10.0);
    std::vector<Criterion> criteria;
    for (std::size_t j = 0; j < cols; ++j)
        criteria.push_back({"c" + std::to_string(j), "c" + std::to_string(j),
                            j % 2 ? Direction::Cost : Direction::Benefit, 1.0 / static_cast<double>(cols),
                            std::nullopt});
    std::vector<Alternative> alts;
    for (std::size_t i = 0; i < rows; ++i) {
        Alternative a{static_cast<AlternativeId>(i + 1), std::nullopt, std::vector<double>(cols)};
        for (auto& v : a.values) v = value(rng);
        alts.push_back(std::move(a));
    }
    return DecisionMatrix(CriteriaSet(std::move(criteria)), std::move(alts));
}

void set_cells(benchmark::State& state, std::size_t rows, std::size_t cols) {
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows * cols));
}

void BM_Topsis(benchmark::State& state, Execution exec) {
    const auto rows = static_cast<std::size_t>(state.range(0));
    const auto cols = static_cast<std::size_t>(state.range(1));
    const auto m = synthetic(rows, cols);
    for (auto _ : state) benchmark::DoNotOptimize(topsis(m, exec));
    set_cells(state, rows, cols);
}

void BM_Normalize(benchmark::State& state, bool parallel) {
    const auto rows = static_cast<std::size_t>(state.range(0));
    const auto cols = static_cast<std::size_t>(state.range(1));
    const auto m = synthetic(rows, cols);
    for (auto _ : state) {
        if (parallel)
            benchmark::DoNotOptimize(parallel::normalize_columns(m.values()));
        else
            benchmark::DoNotOptimize(serial::normalize_columns(m.values()));
    }
    set_cells(state, rows, cols);
}

void BM_Separations(benchmark::State& state, bool parallel) {
    const auto rows = static_cast<std::size_t>(state.range(0));
    const auto cols = static_cast<std::size_t>(state.range(1));
    const auto v = synthetic(rows, cols).values();
    std::vector<double> hi, lo;
    serial::column_extremes(v, hi, lo);
    for (auto _ : state) {
        if (parallel)
            benchmark::DoNotOptimize(parallel::separations(v, hi, lo));
        else
            benchmark::DoNotOptimize(serial::separations(v, hi, lo));
    }
    set_cells(state, rows, cols);
}

void BM_Batch(benchmark::State& state, Execution exec) {
    const auto count = static_cast<std::size_t>(state.range(0));
    std::vector<DecisionMatrix> batch;
    for (std::size_t k = 0; k < count; ++k) batch.push_back(synthetic(12, 4, k + 1));
    for (auto _ : state) benchmark::DoNotOptimize(topsis_batch(batch, exec));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(count));
}

void shapes(benchmark::internal::Benchmark* b) {
    for (auto rows : {12, 1000, 100000}) b->Args({rows, 8});
    b->Args({10000, 64});
}

}  // namespace

BENCHMARK_CAPTURE(BM_Topsis, serial, Execution::Serial)->Apply(shapes);
BENCHMARK_CAPTURE(BM_Topsis, parallel, Execution::Parallel)->Apply(shapes);
BENCHMARK_CAPTURE(BM_Normalize, serial, false)->Apply(shapes);
BENCHMARK_CAPTURE(BM_Normalize, parallel, true)->Apply(shapes);
BENCHMARK_CAPTURE(BM_Separations, serial, false)->Apply(shapes);
BENCHMARK_CAPTURE(BM_Separations, parallel, true)->Apply(shapes);
BENCHMARK_CAPTURE(BM_Batch, serial, Execution::Serial)->Arg(64)->Arg(4096);
BENCHMARK_CAPTURE(BM_Batch, parallel, Execution::Parallel)->Arg(64)->Arg(4096);

BENCHMARK_MAIN();
