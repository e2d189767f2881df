#include "uavsplit/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace uavsplit
{
    GeoPosition position_at(const CircularTrajectory& trajectory, double t_s) noexcept
    {
        const double angle = trajectory.angular_speed_rad_s * t_s + trajectory.phase_rad;
        return GeoPosition{trajectory.center.x + trajectory.radius_m * std::cos(angle),
                           trajectory.center.y + trajectory.radius_m * std::sin(angle)};
    }

    GeoPosition PlacementGrid::cell_center(int cell) const noexcept
    {
        const int row = cell / granularity;
        const int col = cell % granularity;
        const double side = cell_side_m();
        return GeoPosition{(col + 0.5) * side, (row + 0.5) * side};
    }

    std::vector<CircularTrajectory> place_nodes(const SimConfig& config, CounterRng& rng)
    {
        const PlacementGrid grid{config.placement_granularity, config.area_side_m};
        if (config.worker_count > grid.cell_count())
        {
            throw PlacementError("cannot place " + std::to_string(config.worker_count) + " workers on " +
                                 std::to_string(grid.cell_count()) + " cells");
        }

        // Partial Fisher-Yates: the first worker_count slots are the sample.
        std::vector<int> cells(static_cast<std::size_t>(grid.cell_count()));
        std::iota(cells.begin(), cells.end(), 0);
        for (std::size_t i = 0; i < static_cast<std::size_t>(config.worker_count); ++i)
        {
            const auto j = i + rng.uniform_index(cells.size() - i);
            std::swap(cells[i], cells[j]);
        }

        const double r = config.movement_radius_m;
        const double lo = r;
        const double hi = config.area_side_m - r;
        std::vector<CircularTrajectory> trajectories;
        trajectories.reserve(static_cast<std::size_t>(config.worker_count));
        for (int i = 0; i < config.worker_count; ++i)
        {
            GeoPosition center = grid.cell_center(cells[static_cast<std::size_t>(i)]);
            center.x = std::clamp(center.x, lo, hi);
            center.y = std::clamp(center.y, lo, hi);
            const double phase = 2.0 * std::numbers::pi * rng.uniform01();
            trajectories.push_back(CircularTrajectory{center, r, config.speed_mps / r, phase});
        }
        return trajectories;
    }
}
