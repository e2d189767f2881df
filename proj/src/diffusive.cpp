#include "uavsplit/diffusive.hpp"

#include <algorithm>
#include <stdexcept>

namespace uavsplit
{
    double phi_init(double capability_gflops)
    {
        if (!(capability_gflops > 0.0))
        {
            throw std::invalid_argument("phi_init: capability must be positive");
        }
        return capability_gflops;
    }

    double phi_update(double capability_gflops, std::span<const NeighborAdvert> neighbors) noexcept
    {
        if (neighbors.empty())
        {
            return capability_gflops;
        }
        double slowest = 0.0;
        for (const NeighborAdvert& k : neighbors)
        {
            slowest = std::max(slowest, k.tx_delay_s + 1.0 / k.phi_gflops);
        }
        const double share = static_cast<double>(neighbors.size()) + 1.0;
        const double inverse = (1.0 / capability_gflops + slowest) / share;
        return 1.0 / inverse;
    }
}
