#pragma once

#include <span>

namespace uavsplit
{
    /// A neighbor's last advertised aggregated capability and the
    /// transmission delay to reach it.
    struct NeighborAdvert
    {
        double phi_gflops = 0.0;
        double tx_delay_s = 0.0;
    };

    /// What a node last heard from a neighbor.
    struct PhiView
    {
        int node_id = -1;
        double phi_gflops = 0.0;
        double advertised_at_s = 0.0;
    };

    /// Aggregated capability before any exchange: the node's own F_i.
    /// Throws std::invalid_argument for a non-positive capability.
    double phi_init(double capability_gflops);

    /// One aggregated-gigaflops update:
    ///
    ///   1/phi' = (1/F + max_k (d_k + 1/phi_k)) / (n + 1)
    ///
    /// Work split evenly over the node and its n neighbors finishes when the
    /// slowest share does; the max term is that share's time per GFLOP.
    /// An isolated node returns F.
    double phi_update(double capability_gflops, std::span<const NeighborAdvert> neighbors) noexcept;
}
