#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace uavsplit
{
    enum class StrategyKind
    {
        Random,
        RandomAcyclic,
        Greedy,
        LocalOnly,
        Distributed,
    };

    inline constexpr std::array<StrategyKind, 5> kAllStrategies = {
        StrategyKind::Random, StrategyKind::RandomAcyclic, StrategyKind::Greedy,
        StrategyKind::LocalOnly, StrategyKind::Distributed};

    /// Inference depth directive. Ordered by aggressiveness.
    enum class ExitLabel
    {
        Full,
        L1,
        L2,
    };

    enum class ArrivalProcess
    {
        Exponential,
        Deterministic, // fixed inter-arrival period, first arrival at one period
    };

    std::string_view to_string(StrategyKind kind) noexcept;
    std::string_view to_string(ExitLabel label) noexcept;
    std::string_view to_string(ArrivalProcess process) noexcept;
    std::optional<StrategyKind> parse_strategy(std::string_view name) noexcept;

    /// A layered task. Layer outputs are indexed by completed-layer count:
    /// layer_output_bits[0] is the raw input, layer_output_bits[k] the feature
    /// map handed off after k layers.
    struct ModelProfile
    {
        int layer_count = 60;
        std::vector<double> layer_gflops = std::vector<double>(60, 0.4);
        std::vector<double> layer_output_bits = std::vector<double>(60, 4e6);
        int exit_full = 60;
        int exit_l1 = 30;
        int exit_l2 = 15;
        int exit_branch_layers = 3;
        /// GFLOPs per exit-branch layer; 0 means the mean main-layer cost.
        double branch_layer_gflops = 0.0;
        double accuracy_full = 0.95;
        double accuracy_l1 = 0.9;
        double accuracy_l2 = 0.6;

        static ModelProfile uniform(int layers, double gflops_per_layer, double output_bits);

        double mean_layer_gflops() const;
        double mean_output_bits() const;
        double branch_cost() const;
        int exit_layer(ExitLabel label) const noexcept;
        double accuracy(ExitLabel label) const noexcept;
        /// Total GFLOPs of a task that completes through the given exit.
        double path_gflops(ExitLabel label) const;
    };

    struct StrategyProbabilities
    {
        double random = 0.2;
        double random_acyclic = 0.1;
        double greedy = 0.05;
    };

    /// Every tunable of a simulation run. Defaults reproduce the reference
    /// scenario (20 km square, 400 +/- 100 GFLOPS workers, 60 ms arrivals).
    struct SimConfig
    {
        int worker_count = 30;
        double area_side_m = 20000.0;
        int placement_granularity = 15;
        double movement_radius_m = 1000.0;
        double speed_mps = 75.0;
        double capability_mean_gflops = 400.0;
        double capability_std_gflops = 100.0;
        double energy_per_gflop_j = 0.02;
        double task_arrival_mean_s = 0.060;
        double decision_period_s = 0.200;
        double sim_step_s = 0.001;
        double max_sim_time_s = 100.0;
        int runs = 50;
        double tx_power_dbm = 30.0;
        double noise_dbm = -85.0;
        double min_snr_db = 3.0;
        double bandwidth_hz = 1e7;
        double gamma_threshold = 0.02;
        StrategyProbabilities strategy_probabilities;
        double alpha_smoothing = 0.3;
        double tau_med = 1.5;
        double tau_high = 2.5;
        double carrier_hz = 2.4e9;
        double altitude_m = 100.0;
        std::uint64_t seed = 1;

        StrategyKind strategy = StrategyKind::Distributed;
        bool early_exit = false;
        ArrivalProcess arrival_process = ArrivalProcess::Exponential;
        ModelProfile model;

        /// Collect the per-event trace in RunResult (tests and debugging).
        bool record_trace = false;
    };

    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(std::string field, std::string reason);

        const std::string& field() const noexcept { return field_; }
        const std::string& reason() const noexcept { return reason_; }

    private:
        std::string field_;
        std::string reason_;
    };

    /// A SimConfig that passed validate_config. Only constructible through it.
    class ValidatedConfig
    {
    public:
        const SimConfig& get() const noexcept { return config_; }
        const SimConfig* operator->() const noexcept { return &config_; }
        const SimConfig& operator*() const noexcept { return config_; }

        /// Number of fixed steps between decision epochs.
        std::int64_t steps_per_epoch() const noexcept { return steps_per_epoch_; }
        std::int64_t total_steps() const noexcept { return total_steps_; }

    private:
        friend ValidatedConfig validate_config(SimConfig raw);
        explicit ValidatedConfig(SimConfig config);

        SimConfig config_;
        std::int64_t steps_per_epoch_ = 1;
        std::int64_t total_steps_ = 0;
    };

    /// Throws ConfigError naming the first violated constraint.
    ValidatedConfig validate_config(SimConfig raw);
}
