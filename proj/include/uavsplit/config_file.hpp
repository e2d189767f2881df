#pragma once

#include "uavsplit/config.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uavsplit
{
    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Shortest text that parses back to the same double ("inf", "nan" for non-finite).
    std::string format_double(double value);
    double parse_double(std::string_view text, std::string_view field);
    std::vector<double> parse_double_list(std::string_view text, std::string_view field);

    /// Set one field by its config key. Lists are comma separated; a single
    /// value for layer_gflops / layer_output_bits fills every layer.
    /// Throws ConfigError on an unknown key or malformed value.
    void apply_config_value(SimConfig& config, std::string_view key, std::string_view value);

    /// `key = value` lines; blank lines and `#` comments are ignored.
    SimConfig parse_config_text(std::string_view text, SimConfig base = {});

    /// Throws IoError if unreadable, ConfigError if malformed.
    SimConfig load_config_file(const std::filesystem::path& path, SimConfig base = {});

    /// Every key with its current value, in a fixed order. Feeding the pairs
    /// back through apply_config_value reproduces the config.
    std::vector<std::pair<std::string, std::string>> config_snapshot(const SimConfig& config);
}
