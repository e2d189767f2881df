#pragma once

#include "uavsplit/config.hpp"
#include "uavsplit/rng.hpp"

#include <span>
#include <stdexcept>

namespace uavsplit
{
    class NoNeighbors : public std::runtime_error
    {
    public:
        NoNeighbors() : std::runtime_error("no neighbors to select from") {}
    };

    struct AllocationDecision
    {
        enum class Action
        {
            ProcessLocally,
            Transfer,
        };

        Action action = Action::ProcessLocally;
        int target_node = -1;
        int task_id = -1;

        static AllocationDecision process_locally() noexcept { return {}; }
        static AllocationDecision transfer(int target, int task) noexcept
        {
            return AllocationDecision{Action::Transfer, target, task};
        }

        bool is_transfer() const noexcept { return action == Action::Transfer; }

        friend bool operator==(const AllocationDecision&, const AllocationDecision&) = default;
    };

    /// A neighbor as seen through its latest advertisement.
    struct NeighborLoad
    {
        int node_id = -1;
        double utilization_s = 0.0;
        double load_gflops = 0.0;
    };

    /// Local state a node decides on. `head_visited` is the sorted set of
    /// nodes the head-of-queue task has already been delivered to.
    struct NodeView
    {
        int node_id = -1;
        double utilization_s = 0.0;
        double load_gflops = 0.0;
        std::span<const NeighborLoad> neighbors;
        int head_task_id = -1;
        std::span<const int> head_visited;
    };

    /// Estimated drain time T/phi in seconds.
    double utilization(double load_gflops, double phi_gflops) noexcept;

    /// Neighbor with minimum utilization, lowest id on ties. Throws NoNeighbors.
    int select_target(std::span<const NeighborLoad> neighbors);

    /// Transfer iff u_self - u_target > gamma (strict).
    AllocationDecision transfer_decision(double u_self, double u_target, double gamma, int target_node,
                                         int task_id) noexcept;

    /// One per-epoch decision for the head-of-queue task under `kind`.
    /// Baseline coin flips draw from `rng`; LocalOnly and Distributed draw nothing.
    AllocationDecision strategy_decide(StrategyKind kind, const NodeView& view, const StrategyProbabilities& probabilities,
                                       double gamma, CounterRng& rng);
}
