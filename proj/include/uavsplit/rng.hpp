#pragma once

#include <cstdint>

namespace uavsplit
{
    /// Subsystems that own an independent random stream within one run.
    enum class Subsystem : std::uint64_t
    {
        Placement = 1,
        Capability = 2,
        Arrivals = 3,
        Strategy = 4,
    };

    constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Counter-based generator: output n is mix(key + n * golden). Streams are
    /// keyed by (seed, subsystem, index), so the stream of node 7 does not
    /// depend on how many other nodes exist or how much they consumed.
    ///
    /// Distribution sampling is done here rather than with <random>
    /// distributions, whose algorithms differ between standard libraries.
    class CounterRng
    {
    public:
        CounterRng(std::uint64_t seed, Subsystem subsystem, std::uint64_t index = 0) noexcept
            : key_(derive_key(seed, subsystem, index))
        {
        }

        std::uint64_t next_u64() noexcept
        {
            ++counter_;
            return splitmix64_mix(key_ + counter_ * kGolden);
        }

        /// Uniform in [0, 1) with 53 random bits.
        double uniform01() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

        /// Uniform in (0, 1).
        double uniform_open() noexcept { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

        /// Unbiased integer in [0, n); n must be positive.
        std::uint64_t uniform_index(std::uint64_t n) noexcept;

        bool bernoulli(double p) noexcept { return uniform01() < p; }

        /// Box-Muller; each call consumes two outputs.
        double normal(double mean, double stddev) noexcept;

        double exponential(double mean) noexcept;

        std::uint64_t counter() const noexcept { return counter_; }

        static std::uint64_t derive_key(std::uint64_t seed, Subsystem subsystem, std::uint64_t index) noexcept
        {
            const auto sub = static_cast<std::uint64_t>(subsystem);
            return splitmix64_mix(splitmix64_mix(seed) ^ splitmix64_mix((sub << 40) ^ (index + 0x632BE59BD9B4E019ULL)));
        }

    private:
        static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

        std::uint64_t key_;
        std::uint64_t counter_ = 0;
    };

    /// Worker capability in GFLOPS: N(mean, stddev) redrawn until positive.
    double sample_capability(CounterRng& rng, double mean_gflops, double stddev_gflops) noexcept;
}
