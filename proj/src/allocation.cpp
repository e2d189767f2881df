#include "uavsplit/allocation.hpp"

#include <algorithm>
#include <vector>

namespace uavsplit
{
    double utilization(double load_gflops, double phi_gflops) noexcept
    {
        return load_gflops / phi_gflops;
    }

    int select_target(std::span<const NeighborLoad> neighbors)
    {
        if (neighbors.empty())
        {
            throw NoNeighbors();
        }
        const NeighborLoad* best = &neighbors.front();
        for (const NeighborLoad& k : neighbors.subspan(1))
        {
            if (k.utilization_s < best->utilization_s ||
                (k.utilization_s == best->utilization_s && k.node_id < best->node_id))
            {
                best = &k;
            }
        }
        return best->node_id;
    }

    AllocationDecision transfer_decision(double u_self, double u_target, double gamma, int target_node,
                                         int task_id) noexcept
    {
        if (u_self - u_target > gamma)
        {
            return AllocationDecision::transfer(target_node, task_id);
        }
        return AllocationDecision::process_locally();
    }

    namespace
    {
        int least_loaded(std::span<const NeighborLoad> neighbors)
        {
            const NeighborLoad* best = &neighbors.front();
            for (const NeighborLoad& k : neighbors.subspan(1))
            {
                if (k.load_gflops < best->load_gflops ||
                    (k.load_gflops == best->load_gflops && k.node_id < best->node_id))
                {
                    best = &k;
                }
            }
            return best->node_id;
        }

        double utilization_of(std::span<const NeighborLoad> neighbors, int node_id)
        {
            for (const NeighborLoad& k : neighbors)
            {
                if (k.node_id == node_id)
                {
                    return k.utilization_s;
                }
            }
            return 0.0;
        }
    }

    AllocationDecision strategy_decide(StrategyKind kind, const NodeView& view, const StrategyProbabilities& probabilities,
                                       double gamma, CounterRng& rng)
    {
        const auto& neighbors = view.neighbors;
        switch (kind)
        {
        case StrategyKind::LocalOnly:
            return AllocationDecision::process_locally();

        case StrategyKind::Random:
            if (!rng.bernoulli(probabilities.random) || neighbors.empty())
            {
                return AllocationDecision::process_locally();
            }
            return AllocationDecision::transfer(neighbors[rng.uniform_index(neighbors.size())].node_id,
                                                view.head_task_id);

        case StrategyKind::RandomAcyclic: {
            if (!rng.bernoulli(probabilities.random_acyclic))
            {
                return AllocationDecision::process_locally();
            }
            std::vector<int> fresh;
            for (const NeighborLoad& k : neighbors)
            {
                if (!std::binary_search(view.head_visited.begin(), view.head_visited.end(), k.node_id))
                {
                    fresh.push_back(k.node_id);
                }
            }
            if (fresh.empty())
            {
                return AllocationDecision::process_locally();
            }
            return AllocationDecision::transfer(fresh[rng.uniform_index(fresh.size())], view.head_task_id);
        }

        case StrategyKind::Greedy:
            if (!rng.bernoulli(probabilities.greedy) || neighbors.empty())
            {
                return AllocationDecision::process_locally();
            }
            return AllocationDecision::transfer(least_loaded(neighbors), view.head_task_id);

        case StrategyKind::Distributed: {
            if (neighbors.empty())
            {
                return AllocationDecision::process_locally();
            }
            const int target = select_target(neighbors);
            return transfer_decision(view.utilization_s, utilization_of(neighbors, target), gamma, target,
                                     view.head_task_id);
        }
        }
        return AllocationDecision::process_locally();
    }
}
