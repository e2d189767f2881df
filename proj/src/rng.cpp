#include "uavsplit/rng.hpp"

#include <cmath>
#include <numbers>

namespace
{
    __extension__ using u128 = unsigned __int128;
}

namespace uavsplit
{
    std::uint64_t CounterRng::uniform_index(std::uint64_t n) noexcept
    {
        // Lemire's multiply-shift with rejection.
        std::uint64_t x = next_u64();
        auto m = static_cast<u128>(x) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n)
        {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold)
            {
                x = next_u64();
                m = static_cast<u128>(x) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    double CounterRng::normal(double mean, double stddev) noexcept
    {
        const double u1 = uniform_open();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * radius * std::cos(2.0 * std::numbers::pi * u2);
    }

    double CounterRng::exponential(double mean) noexcept
    {
        return -mean * std::log(uniform_open());
    }

    double sample_capability(CounterRng& rng, double mean_gflops, double stddev_gflops) noexcept
    {
        for (;;)
        {
            const double draw = rng.normal(mean_gflops, stddev_gflops);
            if (draw > 0.0)
            {
                return draw;
            }
        }
    }
}
