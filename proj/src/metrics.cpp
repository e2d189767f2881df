#include "uavsplit/metrics.hpp"

#include "uavsplit/engine.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <limits>

namespace uavsplit
{
    double jain_fairness(std::span<const double> xs)
    {
        double sum = 0.0;
        double sum_sq = 0.0;
        for (double x : xs)
        {
            sum += x;
            sum_sq += x * x;
        }
        if (xs.empty() || !(sum_sq > 0.0))
        {
            throw UndefinedMetric("jain_fairness: no positive entries");
        }
        return (sum * sum) / (static_cast<double>(xs.size()) * sum_sq);
    }

    double figure_of_merit(double tasks_per_s, double accuracy, double energy_per_task_j, double latency_s)
    {
        if (!(energy_per_task_j > 0.0) || !(latency_s > 0.0))
        {
            throw UndefinedMetric("figure_of_merit: energy and latency must be positive");
        }
        return tasks_per_s * accuracy / (energy_per_task_j * latency_s);
    }

    double t_quantile_975(std::size_t degrees_of_freedom)
    {
        const boost::math::students_t dist(static_cast<double>(degrees_of_freedom));
        return boost::math::quantile(dist, 0.975);
    }

    MetricSummary summarize(std::span<const double> values)
    {
        MetricSummary s;
        s.samples = values.size();
        if (values.empty())
        {
            s.mean = std::numeric_limits<double>::quiet_NaN();
            s.ci95 = std::numeric_limits<double>::quiet_NaN();
            return s;
        }
        double sum = 0.0;
        for (double v : values)
        {
            sum += v;
        }
        s.mean = sum / static_cast<double>(values.size());
        if (values.size() < 2)
        {
            s.ci95 = std::numeric_limits<double>::quiet_NaN();
            return s;
        }
        double ss = 0.0;
        for (double v : values)
        {
            ss += (v - s.mean) * (v - s.mean);
        }
        const double n = static_cast<double>(values.size());
        const double stddev = std::sqrt(ss / (n - 1.0));
        s.ci95 = t_quantile_975(values.size() - 1) * stddev / std::sqrt(n);
        return s;
    }

    MetricSummary summarize(std::span<const std::optional<double>> values)
    {
        std::vector<double> defined;
        defined.reserve(values.size());
        for (const auto& v : values)
        {
            if (v)
            {
                defined.push_back(*v);
            }
        }
        return summarize(std::span<const double>(defined));
    }

    std::string_view column_name(Metric metric) noexcept
    {
        switch (metric)
        {
        case Metric::Completed: return "completed";
        case Metric::MeanLatency: return "mean_latency_s";
        case Metric::MeanRemaining: return "mean_remaining_gflops";
        case Metric::MeanTransfer: return "mean_transfer_s";
        case Metric::Jain: return "jain";
        case Metric::EnergyPerTask: return "energy_per_task_j";
        case Metric::MeanAccuracy: return "mean_acc";
        case Metric::Fom: return "fom";
        }
        return "unknown";
    }

    std::optional<double> metric_value(const RunResult& r, Metric metric) noexcept
    {
        switch (metric)
        {
        case Metric::Completed: return static_cast<double>(r.completed_tasks);
        case Metric::MeanLatency: return r.mean_latency_s;
        case Metric::MeanRemaining: return r.mean_remaining_gflops;
        case Metric::MeanTransfer: return r.mean_transfer_time_s;
        case Metric::Jain: return r.jain_fairness;
        case Metric::EnergyPerTask: return r.energy_per_task_j;
        case Metric::MeanAccuracy: return r.mean_accuracy;
        case Metric::Fom: return r.fom;
        }
        return std::nullopt;
    }

    RunSummary aggregate_runs(std::span<const RunResult> results)
    {
        RunSummary summary;
        summary.runs = results.size();
        std::vector<std::optional<double>> column(results.size());
        for (std::size_t m = 0; m < kAllMetrics.size(); ++m)
        {
            for (std::size_t i = 0; i < results.size(); ++i)
            {
                column[i] = metric_value(results[i], kAllMetrics[m]);
            }
            summary.metrics[m] = summarize(std::span<const std::optional<double>>(column));
        }
        return summary;
    }
}
