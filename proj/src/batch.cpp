#include "uavsplit/batch.hpp"

#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace uavsplit
{
    std::vector<RunResult> run_batch_serial(std::span<const RunRequest> requests)
    {
        std::vector<RunResult> results;
        results.reserve(requests.size());
        for (const RunRequest& request : requests)
        {
            Simulation sim(request.config, request.seed);
            sim.run();
            results.push_back(sim.result());
        }
        return results;
    }

    int effective_jobs(int jobs) noexcept
    {
#ifdef _OPENMP
        return jobs > 0 ? jobs : omp_get_max_threads();
#else
        (void)jobs;
        return 1;
#endif
    }

    std::vector<RunResult> run_batch_parallel(std::span<const RunRequest> requests, int jobs)
    {
        std::vector<RunResult> results(requests.size());
        std::exception_ptr failure;
        std::mutex failure_mutex;
        const auto count = static_cast<std::int64_t>(requests.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(effective_jobs(jobs))
        for (std::int64_t i = 0; i < count; ++i)
        {
            try
            {
                const RunRequest& request = requests[static_cast<std::size_t>(i)];
                Simulation sim(request.config, request.seed);
                sim.run();
                results[static_cast<std::size_t>(i)] = sim.result();
            }
            catch (...)
            {
                const std::lock_guard lock(failure_mutex);
                if (!failure)
                {
                    failure = std::current_exception();
                }
            }
        }

        if (failure)
        {
            std::rethrow_exception(failure);
        }
        return results;
    }
}
