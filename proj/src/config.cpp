#include "uavsplit/config.hpp"

#include <cmath>
#include <numeric>

namespace uavsplit
{
    std::string_view to_string(StrategyKind kind) noexcept
    {
        switch (kind)
        {
        case StrategyKind::Random: return "random";
        case StrategyKind::RandomAcyclic: return "random_acyclic";
        case StrategyKind::Greedy: return "greedy";
        case StrategyKind::LocalOnly: return "local_only";
        case StrategyKind::Distributed: return "distributed";
        }
        return "unknown";
    }

    std::string_view to_string(ExitLabel label) noexcept
    {
        switch (label)
        {
        case ExitLabel::Full: return "full";
        case ExitLabel::L1: return "l1";
        case ExitLabel::L2: return "l2";
        }
        return "unknown";
    }

    std::string_view to_string(ArrivalProcess process) noexcept
    {
        return process == ArrivalProcess::Exponential ? "exponential" : "deterministic";
    }

    std::optional<StrategyKind> parse_strategy(std::string_view name) noexcept
    {
        for (auto kind : kAllStrategies)
        {
            if (to_string(kind) == name)
            {
                return kind;
            }
        }
        return std::nullopt;
    }

    ModelProfile ModelProfile::uniform(int layers, double gflops_per_layer, double output_bits)
    {
        ModelProfile p;
        p.layer_count = layers;
        p.layer_gflops.assign(static_cast<std::size_t>(std::max(layers, 0)), gflops_per_layer);
        p.layer_output_bits.assign(static_cast<std::size_t>(std::max(layers, 0)), output_bits);
        p.exit_full = layers;
        return p;
    }

    double ModelProfile::mean_layer_gflops() const
    {
        if (layer_gflops.empty())
        {
            return 0.0;
        }
        return std::accumulate(layer_gflops.begin(), layer_gflops.end(), 0.0) /
               static_cast<double>(layer_gflops.size());
    }

    double ModelProfile::mean_output_bits() const
    {
        if (layer_output_bits.empty())
        {
            return 0.0;
        }
        return std::accumulate(layer_output_bits.begin(), layer_output_bits.end(), 0.0) /
               static_cast<double>(layer_output_bits.size());
    }

    double ModelProfile::branch_cost() const
    {
        return branch_layer_gflops > 0.0 ? branch_layer_gflops : mean_layer_gflops();
    }

    int ModelProfile::exit_layer(ExitLabel label) const noexcept
    {
        switch (label)
        {
        case ExitLabel::L1: return exit_l1;
        case ExitLabel::L2: return exit_l2;
        case ExitLabel::Full: break;
        }
        return exit_full;
    }

    double ModelProfile::accuracy(ExitLabel label) const noexcept
    {
        switch (label)
        {
        case ExitLabel::L1: return accuracy_l1;
        case ExitLabel::L2: return accuracy_l2;
        case ExitLabel::Full: break;
        }
        return accuracy_full;
    }

    double ModelProfile::path_gflops(ExitLabel label) const
    {
        const int main_layers = exit_layer(label);
        double total = 0.0;
        for (int l = 0; l < main_layers; ++l)
        {
            total += layer_gflops[static_cast<std::size_t>(l)];
        }
        if (label != ExitLabel::Full)
        {
            total += exit_branch_layers * branch_cost();
        }
        return total;
    }

    ConfigError::ConfigError(std::string field, std::string reason)
        : std::runtime_error(field + ": " + reason), field_(std::move(field)), reason_(std::move(reason))
    {
    }

    ValidatedConfig::ValidatedConfig(SimConfig config) : config_(std::move(config))
    {
        steps_per_epoch_ = std::llround(config_.decision_period_s / config_.sim_step_s);
        total_steps_ = std::llround(config_.max_sim_time_s / config_.sim_step_s);
    }

    namespace
    {
        void require(bool ok, const char* field, const char* reason)
        {
            if (!ok)
            {
                throw ConfigError(field, reason);
            }
        }

        // NaN fails every comparison, so these reject it as well.
        bool positive(double v) { return v > 0.0; }
        bool finite_positive(double v) { return v > 0.0 && std::isfinite(v); }
        bool probability(double v) { return v >= 0.0 && v <= 1.0; }

        void validate_model(const ModelProfile& m)
        {
            require(m.layer_count >= 1, "layer_count", "must be a positive count");
            require(m.layer_gflops.size() == static_cast<std::size_t>(m.layer_count), "layer_gflops",
                    "must have exactly layer_count entries");
            require(m.layer_output_bits.size() == static_cast<std::size_t>(m.layer_count), "layer_output_bits",
                    "must have exactly layer_count entries");
            for (double g : m.layer_gflops)
            {
                require(finite_positive(g), "layer_gflops", "every layer must cost a positive finite GFLOPs value");
            }
            for (double b : m.layer_output_bits)
            {
                require(finite_positive(b), "layer_output_bits", "every output size must be positive and finite");
            }
            require(m.exit_full == m.layer_count, "exit_points", "full exit must equal layer_count");
            require(m.exit_l2 >= 1 && m.exit_l2 < m.exit_l1 && m.exit_l1 < m.exit_full, "exit_points",
                    "must satisfy 0 < L2 < L1 < L_full");
            require(m.exit_branch_layers >= 0, "exit_branch_layers", "must be non-negative");
            require(m.branch_layer_gflops >= 0.0 && std::isfinite(m.branch_layer_gflops), "branch_layer_gflops",
                    "must be non-negative and finite");
            require(probability(m.accuracy_full) && probability(m.accuracy_l1) && probability(m.accuracy_l2),
                    "exit_accuracies", "must lie in [0, 1]");
            require(m.accuracy_l2 < m.accuracy_l1 && m.accuracy_l1 < m.accuracy_full, "exit_accuracies",
                    "must strictly increase with exit depth");
        }
    }

    ValidatedConfig validate_config(SimConfig c)
    {
        require(c.worker_count >= 1, "worker_count", "must be a positive count");
        require(finite_positive(c.area_side_m), "area_side_m", "must be positive and finite");
        require(c.placement_granularity >= 1, "placement_granularity", "must be a positive count");
        require(static_cast<std::int64_t>(c.placement_granularity) * c.placement_granularity >= c.worker_count,
                "placement_granularity", "granularity^2 must be at least worker_count");
        require(finite_positive(c.movement_radius_m), "movement_radius_m", "must be positive and finite");
        require(2.0 * c.movement_radius_m <= c.area_side_m, "movement_radius_m",
                "trajectory diameter must fit inside the area");
        require(finite_positive(c.speed_mps), "speed_mps", "must be positive and finite");
        require(finite_positive(c.capability_mean_gflops), "capability_mean_gflops", "must be positive and finite");
        require(c.capability_std_gflops >= 0.0 && std::isfinite(c.capability_std_gflops), "capability_std_gflops",
                "must be non-negative and finite");
        require(finite_positive(c.energy_per_gflop_j), "energy_per_gflop_j", "must be positive and finite");
        require(positive(c.task_arrival_mean_s), "task_arrival_mean_s", "must be positive");
        require(finite_positive(c.sim_step_s), "sim_step_s", "must be positive and finite");
        require(finite_positive(c.decision_period_s), "decision_period_s", "must be positive and finite");
        {
            const double ratio = c.decision_period_s / c.sim_step_s;
            require(ratio >= 1.0 - 1e-9 && std::abs(ratio - std::round(ratio)) <= 1e-6 * ratio, "decision_period_s",
                    "must be a whole multiple of sim_step_s");
        }
        require(finite_positive(c.max_sim_time_s), "max_sim_time_s", "must be positive and finite");
        require(c.runs >= 1, "runs", "must be a positive count");
        require(std::isfinite(c.tx_power_dbm), "tx_power_dbm", "must be finite");
        require(std::isfinite(c.noise_dbm), "noise_dbm", "must be finite");
        require(std::isfinite(c.min_snr_db), "min_snr_db", "must be finite");
        require(finite_positive(c.bandwidth_hz), "bandwidth_hz", "must be positive and finite");
        require(c.gamma_threshold >= 0.0, "gamma_threshold", "must be non-negative");
        require(probability(c.strategy_probabilities.random), "strategy_probabilities.random", "must lie in [0, 1]");
        require(probability(c.strategy_probabilities.random_acyclic), "strategy_probabilities.random_acyclic",
                "must lie in [0, 1]");
        require(probability(c.strategy_probabilities.greedy), "strategy_probabilities.greedy", "must lie in [0, 1]");
        require(c.alpha_smoothing > 0.0 && c.alpha_smoothing <= 1.0, "alpha_smoothing", "must lie in (0, 1]");
        require(!std::isnan(c.tau_med) && !std::isnan(c.tau_high), "tau_med", "must be a number");
        require(c.tau_med < c.tau_high, "tau_med", "tau_med must be below tau_high");
        require(finite_positive(c.carrier_hz), "carrier_hz", "must be positive and finite");
        require(finite_positive(c.altitude_m), "altitude_m", "must be positive and finite");
        validate_model(c.model);
        return ValidatedConfig(std::move(c));
    }
}
