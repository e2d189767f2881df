#pragma once

#include "uavsplit/config.hpp"
#include "uavsplit/engine.hpp"
#include "uavsplit/metrics.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uavsplit
{
    enum class SweepAxis
    {
        Workers,
        ArrivalMs,
        AreaKm,
        EarlyExit,
        Strategy,
    };

    std::string_view to_string(SweepAxis axis) noexcept;

    /// Values for one axis, as text: integers for workers, numbers for
    /// arrival_ms / area_km, on|off for early_exit, strategy names.
    struct SweepSpec
    {
        SweepAxis axis = SweepAxis::Workers;
        std::vector<std::string> values;
    };

    /// One cell of the sweep cross-product.
    struct SweepPoint
    {
        std::string suite;
        int workers = 0;
        double arrival_ms = 0.0;
        double area_km = 0.0;
        bool early_exit = false;
        StrategyKind strategy = StrategyKind::Distributed;

        friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
    };

    inline constexpr std::array<std::string_view, 4> kPredefinedSuites = {"basic", "input", "area", "exit"};

    /// The predefined evaluation suites: basic (workers 10-50, early exit
    /// off), input (30 workers, arrival 60-100 ms), area (30 workers, area
    /// 10-40 km), exit (workers 10-50, early exit off and on). Every suite
    /// runs all five strategies. Throws ConfigError for an unknown name.
    std::vector<SweepSpec> default_suite(std::string_view suite);

    /// Cross-product of the specs over the base config, ordered workers >
    /// arrival > area > early_exit > strategy (outermost first). Axes not
    /// named take the base config's value; later specs on the same axis
    /// replace earlier ones. No specs gives the single base point.
    /// Throws ConfigError for malformed values.
    std::vector<SweepPoint> expand_sweeps(const SimConfig& base, std::string_view suite,
                                          std::span<const SweepSpec> specs);

    SimConfig apply_point(const SimConfig& base, const SweepPoint& point);

    std::string run_csv_header();
    std::string run_csv_row(const SweepPoint& point, const RunResult& result);
    std::string aggregate_csv_header();
    std::string aggregate_csv_row(const SweepPoint& point, const RunSummary& summary);

    struct ExperimentOptions
    {
        std::string suite = "custom";
        std::vector<SweepSpec> sweeps;
        int runs = 50;
        std::uint64_t seed = 1;
        int jobs = 1;
        std::filesystem::path out_dir = "results";
        std::string command_line;
    };

    /// Exit codes of run_experiment and the CLI.
    inline constexpr int kExitOk = 0;
    inline constexpr int kExitConfigError = 1;
    inline constexpr int kExitIoError = 2;

    /// For every sweep point, runs seeds seed .. seed+runs-1 and writes
    /// runs.csv, aggregate.csv and manifest.json under out_dir. Rows are
    /// written in (point, seed) order and flushed per point. Errors are
    /// reported on `err` and mapped to the exit codes above.
    int run_experiment(const SimConfig& base, const ExperimentOptions& options, std::ostream& log, std::ostream& err);

    /// git-describe of the source tree at configure time.
    std::string_view version_string() noexcept;
}
