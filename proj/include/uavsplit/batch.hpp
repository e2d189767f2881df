#pragma once

#include "uavsplit/config.hpp"
#include "uavsplit/engine.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace uavsplit
{
    /// One independent simulation: a validated config and the seed to run it with.
    struct RunRequest
    {
        ValidatedConfig config;
        std::uint64_t seed = 0;
    };

    /// Reference path: runs in request order on the calling thread.
    std::vector<RunResult> run_batch_serial(std::span<const RunRequest> requests);

    /// Runs requests concurrently with OpenMP (one run per task, `jobs`
    /// threads; 0 means the OpenMP default). Results are positionally
    /// identical to run_batch_serial. The first exception thrown by any run
    /// is rethrown after the loop.
    std::vector<RunResult> run_batch_parallel(std::span<const RunRequest> requests, int jobs = 0);

    /// Threads the parallel path would use for `jobs`.
    int effective_jobs(int jobs) noexcept;
}
