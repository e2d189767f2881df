#include "uavsplit/experiment.hpp"

#include "uavsplit/batch.hpp"
#include "uavsplit/config_file.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>

#ifndef UAVSPLIT_VERSION
#define UAVSPLIT_VERSION "unknown"
#endif

namespace uavsplit
{
    std::string_view to_string(SweepAxis axis) noexcept
    {
        switch (axis)
        {
        case SweepAxis::Workers: return "workers";
        case SweepAxis::ArrivalMs: return "arrival_ms";
        case SweepAxis::AreaKm: return "area_km";
        case SweepAxis::EarlyExit: return "early_exit";
        case SweepAxis::Strategy: return "strategy";
        }
        return "unknown";
    }

    std::string_view version_string() noexcept
    {
        return UAVSPLIT_VERSION;
    }

    namespace
    {
        std::vector<std::string> all_strategy_names()
        {
            std::vector<std::string> names;
            for (auto kind : kAllStrategies)
            {
                names.emplace_back(to_string(kind));
            }
            return names;
        }

        std::vector<std::string> range_values(int from, int to, int step)
        {
            std::vector<std::string> values;
            for (int v = from; v <= to; v += step)
            {
                values.push_back(std::to_string(v));
            }
            return values;
        }

        std::string csv_value(const std::optional<double>& value)
        {
            return value ? format_double(*value) : std::string("nan");
        }

        std::string point_prefix(const SweepPoint& p)
        {
            return p.suite + "," + std::string(to_string(p.strategy)) + "," + std::to_string(p.workers) + "," +
                   format_double(p.arrival_ms) + "," + format_double(p.area_km) + "," + (p.early_exit ? "on" : "off");
        }

        template <typename T, typename Parse>
        std::vector<T> parse_axis(const SweepSpec& spec, Parse parse)
        {
            if (spec.values.empty())
            {
                throw ConfigError(std::string(to_string(spec.axis)), "sweep values must be non-empty");
            }
            std::vector<T> out;
            for (const auto& v : spec.values)
            {
                out.push_back(parse(v));
            }
            return out;
        }
    }

    std::vector<SweepSpec> default_suite(std::string_view suite)
    {
        const auto strategies = SweepSpec{SweepAxis::Strategy, all_strategy_names()};
        if (suite == "basic")
        {
            return {{SweepAxis::Workers, range_values(10, 50, 10)},
                    {SweepAxis::ArrivalMs, {"60"}},
                    {SweepAxis::AreaKm, {"20"}},
                    {SweepAxis::EarlyExit, {"off"}},
                    strategies};
        }
        if (suite == "input")
        {
            return {{SweepAxis::Workers, {"30"}},
                    {SweepAxis::ArrivalMs, range_values(60, 100, 10)},
                    {SweepAxis::AreaKm, {"20"}},
                    {SweepAxis::EarlyExit, {"off"}},
                    strategies};
        }
        if (suite == "area")
        {
            return {{SweepAxis::Workers, {"30"}},
                    {SweepAxis::ArrivalMs, {"60"}},
                    {SweepAxis::AreaKm, range_values(10, 40, 5)},
                    {SweepAxis::EarlyExit, {"off"}},
                    strategies};
        }
        if (suite == "exit")
        {
            return {{SweepAxis::Workers, range_values(10, 50, 10)},
                    {SweepAxis::ArrivalMs, {"60"}},
                    {SweepAxis::AreaKm, {"20"}},
                    {SweepAxis::EarlyExit, {"off", "on"}},
                    strategies};
        }
        throw ConfigError("suite", "unknown suite '" + std::string(suite) + "'");
    }

    std::vector<SweepPoint> expand_sweeps(const SimConfig& base, std::string_view suite,
                                          std::span<const SweepSpec> specs)
    {
        std::vector<int> workers{base.worker_count};
        std::vector<double> arrivals{base.task_arrival_mean_s * 1000.0};
        std::vector<double> areas{base.area_side_m / 1000.0};
        std::vector<bool> exits{base.early_exit};
        std::vector<StrategyKind> strategies{base.strategy};

        for (const SweepSpec& spec : specs)
        {
            const std::string field(to_string(spec.axis));
            switch (spec.axis)
            {
            case SweepAxis::Workers:
                workers = parse_axis<int>(spec, [&](const std::string& v) {
                    const double w = parse_double(v, field);
                    if (w != std::floor(w))
                    {
                        throw ConfigError(field, "worker count must be an integer");
                    }
                    return static_cast<int>(w);
                });
                break;
            case SweepAxis::ArrivalMs:
                arrivals = parse_axis<double>(spec, [&](const std::string& v) { return parse_double(v, field); });
                break;
            case SweepAxis::AreaKm:
                areas = parse_axis<double>(spec, [&](const std::string& v) { return parse_double(v, field); });
                break;
            case SweepAxis::EarlyExit:
                exits = parse_axis<bool>(spec, [&](const std::string& v) {
                    if (v == "on")
                    {
                        return true;
                    }
                    if (v == "off")
                    {
                        return false;
                    }
                    throw ConfigError(field, "expected on or off, got '" + v + "'");
                });
                break;
            case SweepAxis::Strategy:
                strategies = parse_axis<StrategyKind>(spec, [&](const std::string& v) {
                    const auto kind = parse_strategy(v);
                    if (!kind)
                    {
                        throw ConfigError(field, "unknown strategy '" + v + "'");
                    }
                    return *kind;
                });
                break;
            }
        }

        std::vector<SweepPoint> points;
        for (int w : workers)
        {
            for (double a : arrivals)
            {
                for (double area : areas)
                {
                    for (bool e : exits)
                    {
                        for (StrategyKind s : strategies)
                        {
                            points.push_back(SweepPoint{std::string(suite), w, a, area, e, s});
                        }
                    }
                }
            }
        }
        return points;
    }

    SimConfig apply_point(const SimConfig& base, const SweepPoint& point)
    {
        SimConfig c = base;
        c.worker_count = point.workers;
        c.task_arrival_mean_s = point.arrival_ms / 1000.0;
        c.area_side_m = point.area_km * 1000.0;
        c.early_exit = point.early_exit;
        c.strategy = point.strategy;
        return c;
    }

    std::string run_csv_header()
    {
        std::string header = "suite,strategy,workers,arrival_ms,area_km,early_exit,seed";
        for (Metric m : kAllMetrics)
        {
            header += ',';
            header += column_name(m);
        }
        return header;
    }

    std::string run_csv_row(const SweepPoint& point, const RunResult& result)
    {
        std::string row = point_prefix(point) + "," + std::to_string(result.seed);
        for (Metric m : kAllMetrics)
        {
            row += ',';
            row += m == Metric::Completed ? std::to_string(result.completed_tasks) : csv_value(metric_value(result, m));
        }
        return row;
    }

    std::string aggregate_csv_header()
    {
        std::string header = "suite,strategy,workers,arrival_ms,area_km,early_exit,runs";
        for (Metric m : kAllMetrics)
        {
            header += ',';
            header += column_name(m);
        }
        for (Metric m : kAllMetrics)
        {
            header += ',';
            header += column_name(m);
            header += "_ci95";
        }
        return header;
    }

    std::string aggregate_csv_row(const SweepPoint& point, const RunSummary& summary)
    {
        std::string row = point_prefix(point) + "," + std::to_string(summary.runs);
        for (Metric m : kAllMetrics)
        {
            row += ',' + format_double(summary[m].mean);
        }
        for (Metric m : kAllMetrics)
        {
            row += ',' + format_double(summary[m].ci95);
        }
        return row;
    }

    int run_experiment(const SimConfig& base, const ExperimentOptions& options, std::ostream& log, std::ostream& err)
    {
        const auto wall_start = std::chrono::steady_clock::now();
        try
        {
            if (options.runs < 1)
            {
                throw ConfigError("runs", "must be a positive count");
            }
            const auto points = expand_sweeps(base, options.suite, options.sweeps);

            // Validate every point before running anything.
            std::vector<ValidatedConfig> configs;
            configs.reserve(points.size());
            for (const SweepPoint& p : points)
            {
                configs.push_back(validate_config(apply_point(base, p)));
            }

            std::error_code ec;
            std::filesystem::create_directories(options.out_dir, ec);
            if (ec)
            {
                throw IoError("cannot create output directory " + options.out_dir.string() + ": " + ec.message());
            }
            std::ofstream runs_csv(options.out_dir / "runs.csv");
            std::ofstream aggregate_csv(options.out_dir / "aggregate.csv");
            if (!runs_csv || !aggregate_csv)
            {
                throw IoError("cannot write CSV files in " + options.out_dir.string());
            }
            runs_csv << run_csv_header() << '\n';
            aggregate_csv << aggregate_csv_header() << '\n';

            for (std::size_t pi = 0; pi < points.size(); ++pi)
            {
                std::vector<RunRequest> requests;
                requests.reserve(static_cast<std::size_t>(options.runs));
                for (int r = 0; r < options.runs; ++r)
                {
                    requests.push_back(RunRequest{configs[pi], options.seed + static_cast<std::uint64_t>(r)});
                }
                const auto results =
                    options.jobs == 1 ? run_batch_serial(requests) : run_batch_parallel(requests, options.jobs);

                for (const RunResult& result : results)
                {
                    runs_csv << run_csv_row(points[pi], result) << '\n';
                }
                aggregate_csv << aggregate_csv_row(points[pi], aggregate_runs(results)) << '\n';
                runs_csv.flush();
                aggregate_csv.flush();
                if (!runs_csv || !aggregate_csv)
                {
                    throw IoError("write failed in " + options.out_dir.string());
                }
                log << "[" << (pi + 1) << "/" << points.size() << "] " << points[pi].suite << " "
                    << to_string(points[pi].strategy) << " workers=" << points[pi].workers
                    << " arrival_ms=" << format_double(points[pi].arrival_ms)
                    << " area_km=" << format_double(points[pi].area_km)
                    << " early_exit=" << (points[pi].early_exit ? "on" : "off") << '\n';
            }

            const double wall_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
            nlohmann::ordered_json manifest;
            manifest["tool"] = "uavsplit";
            manifest["version"] = std::string(version_string());
            manifest["suite"] = options.suite;
            manifest["command_line"] = options.command_line;
            manifest["runs_per_point"] = options.runs;
            manifest["first_seed"] = options.seed;
            manifest["points"] = points.size();
            manifest["jobs"] = effective_jobs(options.jobs);
            manifest["wall_time_s"] = wall_s;
            manifest["files"] = {{"runs", "runs.csv"}, {"aggregate", "aggregate.csv"}};
            auto& snapshot = manifest["config"];
            snapshot = nlohmann::ordered_json::object();
            for (const auto& [key, value] : config_snapshot(base))
            {
                snapshot[key] = value;
            }
            std::ofstream manifest_file(options.out_dir / "manifest.json");
            if (!manifest_file)
            {
                throw IoError("cannot write manifest.json in " + options.out_dir.string());
            }
            manifest_file << manifest.dump(2) << '\n';
            if (!manifest_file)
            {
                throw IoError("write failed for manifest.json");
            }
            return kExitOk;
        }
        catch (const ConfigError& e)
        {
            err << "config error: " << e.what() << '\n';
            return kExitConfigError;
        }
        catch (const PlacementError& e)
        {
            err << "config error: " << e.what() << '\n';
            return kExitConfigError;
        }
        catch (const IoError& e)
        {
            err << "i/o error: " << e.what() << '\n';
            return kExitIoError;
        }
        catch (const std::filesystem::filesystem_error& e)
        {
            err << "i/o error: " << e.what() << '\n';
            return kExitIoError;
        }
    }
}
