#pragma once

#include "uavsplit/channel.hpp"
#include "uavsplit/config.hpp"
#include "uavsplit/rng.hpp"

#include <stdexcept>
#include <vector>

namespace uavsplit
{
    /// Counterclockwise orbit at constant angular speed.
    struct CircularTrajectory
    {
        GeoPosition center;
        double radius_m = 1000.0;
        double angular_speed_rad_s = 0.075;
        double phase_rad = 0.0;
    };

    GeoPosition position_at(const CircularTrajectory& trajectory, double t_s) noexcept;

    class PlacementError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// granularity x granularity cells over the square area; trajectory
    /// centers are drawn from the cell centers.
    struct PlacementGrid
    {
        int granularity = 15;
        double area_side_m = 20000.0;

        double cell_side_m() const noexcept { return area_side_m / granularity; }
        int cell_count() const noexcept { return granularity * granularity; }
        GeoPosition cell_center(int cell) const noexcept;
    };

    /// Samples worker_count distinct cells without replacement, clamps each
    /// center so the whole circle stays in bounds, and draws a uniform phase.
    /// Throws PlacementError when there are fewer cells than workers.
    std::vector<CircularTrajectory> place_nodes(const SimConfig& config, CounterRng& rng);
}
