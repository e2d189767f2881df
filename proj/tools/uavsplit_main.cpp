// uavsplit: batch experiment runner for the UAV split-computing simulator.

#include "uavsplit/config_file.hpp"
#include "uavsplit/experiment.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

namespace
{
    std::vector<std::string> split_list(const std::string& text)
    {
        std::vector<std::string> out;
        std::stringstream in(text);
        std::string item;
        while (std::getline(in, item, ','))
        {
            if (!item.empty())
            {
                out.push_back(item);
            }
        }
        return out;
    }

    void replace_axis(std::vector<uavsplit::SweepSpec>& sweeps, uavsplit::SweepAxis axis,
                      std::vector<std::string> values)
    {
        std::erase_if(sweeps, [axis](const uavsplit::SweepSpec& s) { return s.axis == axis; });
        sweeps.push_back({axis, std::move(values)});
    }
}

int main(int argc, char** argv)
{
    using namespace uavsplit;

    CLI::App app{"Distributed split-computing simulator for UAV swarms"};
    app.set_version_flag("--version", std::string(version_string()));

    std::string config_path;
    std::string suite = "custom";
    std::string strategies;
    std::string workers;
    std::string arrival_ms;
    std::string area_km;
    std::string early_exit;
    std::optional<int> runs;
    std::optional<std::uint64_t> seed;
    std::optional<double> max_time_s;
    std::string out_dir = "results";
    int jobs = 1;
    std::vector<std::string> overrides;

    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--suite", suite, "predefined sweep")->check(CLI::IsMember({"basic", "input", "area", "exit", "custom"}));
    app.add_option("--strategy", strategies,
                   "comma list of random,random_acyclic,greedy,local_only,distributed");
    app.add_option("--workers", workers, "comma list of worker counts");
    app.add_option("--arrival-ms", arrival_ms, "comma list of mean task inter-arrival times (ms)");
    app.add_option("--area-km", area_km, "comma list of area side lengths (km)");
    app.add_option("--early-exit", early_exit, "early-exit mode")->check(CLI::IsMember({"on", "off", "both"}));
    app.add_option("--runs", runs, "runs per sweep point");
    app.add_option("--seed", seed, "first seed; run r uses seed + r");
    app.add_option("--max-time-s", max_time_s, "simulated seconds per run");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--jobs", jobs, "parallel runs (0 = all cores)")->check(CLI::NonNegativeNumber);
    app.add_option("--set", overrides, "override any config key, e.g. --set gamma_threshold=0.05");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    SimConfig base;
    std::vector<SweepSpec> sweeps;
    try
    {
        if (!config_path.empty())
        {
            base = load_config_file(config_path);
        }
        for (const std::string& kv : overrides)
        {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
            {
                throw ConfigError("--set", "expected key=value, got '" + kv + "'");
            }
            apply_config_value(base, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (max_time_s)
        {
            base.max_sim_time_s = *max_time_s;
        }
        if (seed)
        {
            base.seed = *seed;
        }
        if (runs)
        {
            base.runs = *runs;
        }

        if (suite != "custom")
        {
            sweeps = default_suite(suite);
        }
        if (!workers.empty())
        {
            replace_axis(sweeps, SweepAxis::Workers, split_list(workers));
        }
        if (!arrival_ms.empty())
        {
            replace_axis(sweeps, SweepAxis::ArrivalMs, split_list(arrival_ms));
        }
        if (!area_km.empty())
        {
            replace_axis(sweeps, SweepAxis::AreaKm, split_list(area_km));
        }
        if (!strategies.empty())
        {
            replace_axis(sweeps, SweepAxis::Strategy, split_list(strategies));
        }
        if (!early_exit.empty())
        {
            replace_axis(sweeps, SweepAxis::EarlyExit,
                         early_exit == "both" ? std::vector<std::string>{"off", "on"}
                                              : std::vector<std::string>{early_exit});
        }
    }
    catch (const ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
    catch (const IoError& e)
    {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIoError;
    }

    ExperimentOptions options;
    options.suite = suite;
    options.sweeps = std::move(sweeps);
    options.runs = base.runs;
    options.seed = base.seed;
    options.jobs = jobs;
    options.out_dir = out_dir;
    for (int i = 0; i < argc; ++i)
    {
        options.command_line += (i ? " " : "") + std::string(argv[i]);
    }
    return run_experiment(base, options, std::cerr, std::cerr);
}
