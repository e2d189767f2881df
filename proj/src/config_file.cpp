#include "uavsplit/config_file.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace uavsplit
{
    namespace
    {
        std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r\n");
            if (first == std::string_view::npos)
            {
                return {};
            }
            const auto last = s.find_last_not_of(" \t\r\n");
            return s.substr(first, last - first + 1);
        }

        std::int64_t parse_int(std::string_view text, std::string_view field)
        {
            text = trim(text);
            std::int64_t value = 0;
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
            {
                throw ConfigError(std::string(field), "expected an integer, got '" + std::string(text) + "'");
            }
            return value;
        }

        std::uint64_t parse_u64(std::string_view text, std::string_view field)
        {
            text = trim(text);
            std::uint64_t value = 0;
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
            {
                throw ConfigError(std::string(field), "expected an unsigned integer, got '" + std::string(text) + "'");
            }
            return value;
        }

        bool parse_switch(std::string_view text, std::string_view field)
        {
            text = trim(text);
            if (text == "on" || text == "true" || text == "1")
            {
                return true;
            }
            if (text == "off" || text == "false" || text == "0")
            {
                return false;
            }
            throw ConfigError(std::string(field), "expected on/off, got '" + std::string(text) + "'");
        }

        std::string join(const std::vector<double>& values)
        {
            std::string out;
            for (std::size_t i = 0; i < values.size(); ++i)
            {
                if (i > 0)
                {
                    out += ',';
                }
                out += format_double(values[i]);
            }
            return out;
        }

        std::vector<double> fill_or_list(std::string_view text, std::string_view field, int layers)
        {
            auto values = parse_double_list(text, field);
            if (values.size() == 1)
            {
                return std::vector<double>(static_cast<std::size_t>(std::max(layers, 0)), values.front());
            }
            return values;
        }

        struct Key
        {
            std::string_view name;
            std::function<void(SimConfig&, std::string_view)> set;
            std::function<std::string(const SimConfig&)> get;
        };

#define UAVSPLIT_DOUBLE_KEY(member)                                                                                    \
    Key                                                                                                                \
    {                                                                                                                  \
        #member, [](SimConfig& c, std::string_view v) { c.member = parse_double(v, #member); },                        \
            [](const SimConfig& c) { return format_double(c.member); }                                                 \
    }
#define UAVSPLIT_INT_KEY(member)                                                                                       \
    Key                                                                                                                \
    {                                                                                                                  \
        #member, [](SimConfig& c, std::string_view v) { c.member = static_cast<int>(parse_int(v, #member)); },         \
            [](const SimConfig& c) { return std::to_string(c.member); }                                                \
    }

        const std::vector<Key>& keys()
        {
            static const std::vector<Key> table = {
                UAVSPLIT_INT_KEY(worker_count),
                UAVSPLIT_DOUBLE_KEY(area_side_m),
                UAVSPLIT_INT_KEY(placement_granularity),
                UAVSPLIT_DOUBLE_KEY(movement_radius_m),
                UAVSPLIT_DOUBLE_KEY(speed_mps),
                UAVSPLIT_DOUBLE_KEY(capability_mean_gflops),
                UAVSPLIT_DOUBLE_KEY(capability_std_gflops),
                UAVSPLIT_DOUBLE_KEY(energy_per_gflop_j),
                UAVSPLIT_DOUBLE_KEY(task_arrival_mean_s),
                UAVSPLIT_DOUBLE_KEY(decision_period_s),
                UAVSPLIT_DOUBLE_KEY(sim_step_s),
                UAVSPLIT_DOUBLE_KEY(max_sim_time_s),
                UAVSPLIT_INT_KEY(runs),
                UAVSPLIT_DOUBLE_KEY(tx_power_dbm),
                UAVSPLIT_DOUBLE_KEY(noise_dbm),
                UAVSPLIT_DOUBLE_KEY(min_snr_db),
                UAVSPLIT_DOUBLE_KEY(bandwidth_hz),
                UAVSPLIT_DOUBLE_KEY(gamma_threshold),
                UAVSPLIT_DOUBLE_KEY(strategy_probabilities.random),
                UAVSPLIT_DOUBLE_KEY(strategy_probabilities.random_acyclic),
                UAVSPLIT_DOUBLE_KEY(strategy_probabilities.greedy),
                UAVSPLIT_DOUBLE_KEY(alpha_smoothing),
                UAVSPLIT_DOUBLE_KEY(tau_med),
                UAVSPLIT_DOUBLE_KEY(tau_high),
                UAVSPLIT_DOUBLE_KEY(carrier_hz),
                UAVSPLIT_DOUBLE_KEY(altitude_m),
                Key{"seed", [](SimConfig& c, std::string_view v) { c.seed = parse_u64(v, "seed"); },
                    [](const SimConfig& c) { return std::to_string(c.seed); }},
                Key{"strategy",
                    [](SimConfig& c, std::string_view v) {
                        const auto kind = parse_strategy(trim(v));
                        if (!kind)
                        {
                            throw ConfigError("strategy", "unknown strategy '" + std::string(trim(v)) + "'");
                        }
                        c.strategy = *kind;
                    },
                    [](const SimConfig& c) { return std::string(to_string(c.strategy)); }},
                Key{"early_exit", [](SimConfig& c, std::string_view v) { c.early_exit = parse_switch(v, "early_exit"); },
                    [](const SimConfig& c) { return std::string(c.early_exit ? "on" : "off"); }},
                Key{"arrival_process",
                    [](SimConfig& c, std::string_view v) {
                        v = trim(v);
                        if (v == "exponential")
                        {
                            c.arrival_process = ArrivalProcess::Exponential;
                        }
                        else if (v == "deterministic")
                        {
                            c.arrival_process = ArrivalProcess::Deterministic;
                        }
                        else
                        {
                            throw ConfigError("arrival_process", "expected exponential or deterministic");
                        }
                    },
                    [](const SimConfig& c) { return std::string(to_string(c.arrival_process)); }},
                Key{"layer_count",
                    [](SimConfig& c, std::string_view v) {
                        const int layers = static_cast<int>(parse_int(v, "layer_count"));
                        if (layers < 1)
                        {
                            throw ConfigError("layer_count", "must be a positive count");
                        }
                        const double g = c.model.mean_layer_gflops();
                        const double b = c.model.mean_output_bits();
                        c.model.layer_count = layers;
                        c.model.layer_gflops.assign(static_cast<std::size_t>(layers), g);
                        c.model.layer_output_bits.assign(static_cast<std::size_t>(layers), b);
                        c.model.exit_full = layers;
                    },
                    [](const SimConfig& c) { return std::to_string(c.model.layer_count); }},
                Key{"layer_gflops",
                    [](SimConfig& c, std::string_view v) {
                        c.model.layer_gflops = fill_or_list(v, "layer_gflops", c.model.layer_count);
                    },
                    [](const SimConfig& c) { return join(c.model.layer_gflops); }},
                Key{"layer_output_bits",
                    [](SimConfig& c, std::string_view v) {
                        c.model.layer_output_bits = fill_or_list(v, "layer_output_bits", c.model.layer_count);
                    },
                    [](const SimConfig& c) { return join(c.model.layer_output_bits); }},
                Key{"exit_points",
                    [](SimConfig& c, std::string_view v) {
                        const auto points = parse_double_list(v, "exit_points");
                        if (points.size() != 3)
                        {
                            throw ConfigError("exit_points", "expected L_full,L_1,L_2");
                        }
                        c.model.exit_full = static_cast<int>(points[0]);
                        c.model.exit_l1 = static_cast<int>(points[1]);
                        c.model.exit_l2 = static_cast<int>(points[2]);
                    },
                    [](const SimConfig& c) {
                        return std::to_string(c.model.exit_full) + "," + std::to_string(c.model.exit_l1) + "," +
                               std::to_string(c.model.exit_l2);
                    }},
                Key{"exit_branch_layers",
                    [](SimConfig& c, std::string_view v) {
                        c.model.exit_branch_layers = static_cast<int>(parse_int(v, "exit_branch_layers"));
                    },
                    [](const SimConfig& c) { return std::to_string(c.model.exit_branch_layers); }},
                Key{"branch_layer_gflops",
                    [](SimConfig& c, std::string_view v) {
                        c.model.branch_layer_gflops = parse_double(v, "branch_layer_gflops");
                    },
                    [](const SimConfig& c) { return format_double(c.model.branch_layer_gflops); }},
                Key{"exit_accuracies",
                    [](SimConfig& c, std::string_view v) {
                        const auto acc = parse_double_list(v, "exit_accuracies");
                        if (acc.size() != 3)
                        {
                            throw ConfigError("exit_accuracies", "expected full,l1,l2");
                        }
                        c.model.accuracy_full = acc[0];
                        c.model.accuracy_l1 = acc[1];
                        c.model.accuracy_l2 = acc[2];
                    },
                    [](const SimConfig& c) {
                        return join({c.model.accuracy_full, c.model.accuracy_l1, c.model.accuracy_l2});
                    }},
            };
            return table;
        }

#undef UAVSPLIT_DOUBLE_KEY
#undef UAVSPLIT_INT_KEY
    }

    std::string format_double(double value)
    {
        if (std::isnan(value))
        {
            return "nan";
        }
        if (std::isinf(value))
        {
            return value > 0 ? "inf" : "-inf";
        }
        std::array<char, 64> buffer{};
        const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
        return std::string(buffer.data(), ec == std::errc() ? ptr : buffer.data());
    }

    double parse_double(std::string_view text, std::string_view field)
    {
        text = trim(text);
        if (!text.empty() && text.front() == '+')
        {
            text.remove_prefix(1);
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        {
            throw ConfigError(std::string(field), "expected a number, got '" + std::string(text) + "'");
        }
        return value;
    }

    std::vector<double> parse_double_list(std::string_view text, std::string_view field)
    {
        std::vector<double> values;
        while (true)
        {
            const auto comma = text.find(',');
            values.push_back(parse_double(text.substr(0, comma), field));
            if (comma == std::string_view::npos)
            {
                break;
            }
            text.remove_prefix(comma + 1);
        }
        return values;
    }

    void apply_config_value(SimConfig& config, std::string_view key, std::string_view value)
    {
        key = trim(key);
        for (const Key& k : keys())
        {
            if (k.name == key)
            {
                k.set(config, value);
                return;
            }
        }
        throw ConfigError(std::string(key), "unknown configuration key");
    }

    SimConfig parse_config_text(std::string_view text, SimConfig base)
    {
        std::size_t line_no = 0;
        while (!text.empty())
        {
            const auto newline = text.find('\n');
            std::string_view line = text.substr(0, newline);
            text.remove_prefix(newline == std::string_view::npos ? text.size() : newline + 1);
            ++line_no;

            if (const auto hash = line.find('#'); hash != std::string_view::npos)
            {
                line = line.substr(0, hash);
            }
            line = trim(line);
            if (line.empty())
            {
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
            {
                throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
            }
            apply_config_value(base, line.substr(0, eq), line.substr(eq + 1));
        }
        return base;
    }

    SimConfig load_config_file(const std::filesystem::path& path, SimConfig base)
    {
        std::ifstream in(path);
        if (!in)
        {
            throw IoError("cannot read config file " + path.string());
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return parse_config_text(buffer.str(), std::move(base));
    }

    std::vector<std::pair<std::string, std::string>> config_snapshot(const SimConfig& config)
    {
        std::vector<std::pair<std::string, std::string>> out;
        for (const Key& k : keys())
        {
            out.emplace_back(std::string(k.name), k.get(config));
        }
        return out;
    }
}
