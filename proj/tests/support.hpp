#pragma once

#include "uavsplit/config.hpp"
#include "uavsplit/engine.hpp"

#include <cstdint>

namespace uavsplit::test
{
    // A short run at the reference parameters, small enough for property loops.
    inline SimConfig small_config(int workers = 10, double seconds = 5.0)
    {
        SimConfig c;
        c.worker_count = workers;
        c.max_sim_time_s = seconds;
        c.record_trace = true;
        return c;
    }

    inline RunResult run(SimConfig c, std::uint64_t seed)
    {
        c.seed = seed;
        return run_simulation(validate_config(std::move(c)));
    }

    // Copies that differ only in the fields naming how they were produced.
    inline RunResult strip_labels(RunResult r)
    {
        r.strategy = StrategyKind::Distributed;
        r.early_exit = false;
        return r;
    }
}
