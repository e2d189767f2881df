#pragma once

#include "uavsplit/config.hpp"

namespace uavsplit
{
    /// (T_now - T_prev) / dt in GFLOPs/s.
    double load_derivative(double load_now_gflops, double load_prev_gflops, double dt_s) noexcept;

    /// Exponential smoothing step: d + alpha * (delta - d).
    double smooth(double d_prev, double delta, double alpha) noexcept;

    /// Full while d <= tau_med, L1 while d <= tau_high, L2 above.
    ExitLabel exit_label(double smoothed_derivative, double tau_med, double tau_high) noexcept;

    struct EffectiveDepth
    {
        int last_main_layer = 0;
        int extra_layers = 0;

        int total_layers() const noexcept { return last_main_layer + extra_layers; }
    };

    EffectiveDepth effective_depth(ExitLabel label, const ModelProfile& profile) noexcept;

    /// Per-node congestion estimator, advanced once per decision epoch.
    struct ExitState
    {
        double smoothed_derivative = 0.0;
        ExitLabel label = ExitLabel::Full;

        void update(double load_now_gflops, double load_prev_gflops, double dt_s, const SimConfig& config) noexcept;
    };
}
