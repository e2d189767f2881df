#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace uavsplit
{
    struct RunResult;

    /// Raised when a metric has no defined value (no completed tasks, all-zero work).
    class UndefinedMetric : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    /// Jain's index (sum x)^2 / (n * sum x^2). Throws UndefinedMetric when
    /// every x is zero or the input is empty.
    double jain_fairness(std::span<const double> xs);

    /// TPS * ACC / (AE * AL). Throws UndefinedMetric unless AE > 0 and AL > 0.
    double figure_of_merit(double tasks_per_s, double accuracy, double energy_per_task_j, double latency_s);

    /// Two-sided 95% Student-t quantile for the given degrees of freedom.
    double t_quantile_975(std::size_t degrees_of_freedom);

    struct MetricSummary
    {
        double mean = 0.0;
        /// Half-width of the 95% t-interval; NaN with fewer than two samples.
        double ci95 = 0.0;
        std::size_t samples = 0;
    };

    /// Mean and CI over the defined values only. All-undefined gives NaN mean.
    MetricSummary summarize(std::span<const std::optional<double>> values);
    MetricSummary summarize(std::span<const double> values);

    /// The per-run metrics reported and aggregated, in CSV column order.
    enum class Metric
    {
        Completed,
        MeanLatency,
        MeanRemaining,
        MeanTransfer,
        Jain,
        EnergyPerTask,
        MeanAccuracy,
        Fom,
    };

    inline constexpr std::array<Metric, 8> kAllMetrics = {
        Metric::Completed, Metric::MeanLatency,   Metric::MeanRemaining, Metric::MeanTransfer,
        Metric::Jain,      Metric::EnergyPerTask, Metric::MeanAccuracy,  Metric::Fom};

    std::string_view column_name(Metric metric) noexcept;
    std::optional<double> metric_value(const RunResult& result, Metric metric) noexcept;

    struct RunSummary
    {
        std::size_t runs = 0;
        std::array<MetricSummary, kAllMetrics.size()> metrics{};

        const MetricSummary& operator[](Metric m) const noexcept { return metrics[static_cast<std::size_t>(m)]; }
    };

    /// Per-metric mean and 95% CI; undefined values are skipped per metric.
    RunSummary aggregate_runs(std::span<const RunResult> results);
}
