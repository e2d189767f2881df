#include "uavsplit/early_exit.hpp"

namespace uavsplit
{
    double load_derivative(double load_now_gflops, double load_prev_gflops, double dt_s) noexcept
    {
        return (load_now_gflops - load_prev_gflops) / dt_s;
    }

    double smooth(double d_prev, double delta, double alpha) noexcept
    {
        return d_prev + alpha * (delta - d_prev);
    }

    ExitLabel exit_label(double smoothed_derivative, double tau_med, double tau_high) noexcept
    {
        if (smoothed_derivative <= tau_med)
        {
            return ExitLabel::Full;
        }
        if (smoothed_derivative <= tau_high)
        {
            return ExitLabel::L1;
        }
        return ExitLabel::L2;
    }

    EffectiveDepth effective_depth(ExitLabel label, const ModelProfile& profile) noexcept
    {
        if (label == ExitLabel::Full)
        {
            return EffectiveDepth{profile.exit_full, 0};
        }
        return EffectiveDepth{profile.exit_layer(label), profile.exit_branch_layers};
    }

    void ExitState::update(double load_now_gflops, double load_prev_gflops, double dt_s,
                           const SimConfig& config) noexcept
    {
        smoothed_derivative = smooth(smoothed_derivative, load_derivative(load_now_gflops, load_prev_gflops, dt_s),
                                     config.alpha_smoothing);
        label = config.early_exit ? exit_label(smoothed_derivative, config.tau_med, config.tau_high) : ExitLabel::Full;
    }
}
