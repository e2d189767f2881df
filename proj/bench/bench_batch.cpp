// Serial reference vs OpenMP batch of independent runs.
//
//   ./uavsplit_bench --benchmark_counters_tabular=true

#include "uavsplit/batch.hpp"

#include <benchmark/benchmark.h>

#include <omp.h>

using namespace uavsplit;

namespace
{
    std::vector<RunRequest> make_batch(int runs, int workers)
    {
        SimConfig c;
        c.worker_count = workers;
        c.max_sim_time_s = 5.0;
        const auto v = validate_config(c);
        std::vector<RunRequest> requests;
        for (int s = 0; s < runs; ++s)
        {
            requests.push_back({v, static_cast<std::uint64_t>(s + 1)});
        }
        return requests;
    }

    void BM_Serial(benchmark::State& state)
    {
        const auto batch = make_batch(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
        for (auto _ : state)
        {
            benchmark::DoNotOptimize(run_batch_serial(batch));
        }
        state.counters["runs/s"] =
            benchmark::Counter(static_cast<double>(batch.size()), benchmark::Counter::kIsIterationInvariantRate);
    }

    void BM_Parallel(benchmark::State& state)
    {
        const auto batch = make_batch(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
        for (auto _ : state)
        {
            benchmark::DoNotOptimize(run_batch_parallel(batch, 0));
        }
        state.counters["runs/s"] =
            benchmark::Counter(static_cast<double>(batch.size()), benchmark::Counter::kIsIterationInvariantRate);
        state.counters["threads"] = omp_get_max_threads();
    }
}

BENCHMARK(BM_Serial)->Args({16, 10})->Args({16, 30})->Args({16, 50})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Parallel)->Args({16, 10})->Args({16, 30})->Args({16, 50})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
