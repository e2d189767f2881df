#include "uavsplit/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace uavsplit
{
    double distance_m(GeoPosition a, GeoPosition b) noexcept
    {
        return std::hypot(a.x - b.x, a.y - b.y);
    }

    ChannelParams ChannelParams::from(const SimConfig& config) noexcept
    {
        return ChannelParams{config.tx_power_dbm, config.noise_dbm,  config.bandwidth_hz,
                             config.min_snr_db,   config.carrier_hz, config.altitude_m};
    }

    double crossover_distance_m(const ChannelParams& params) noexcept
    {
        return 4.0 * std::numbers::pi * params.altitude_m * params.altitude_m * params.carrier_hz / kSpeedOfLight;
    }

    double path_gain_db(double distance, const ChannelParams& params)
    {
        if (!(distance > 0.0))
        {
            throw std::invalid_argument("path_gain_db: distance must be positive");
        }
        if (distance <= crossover_distance_m(params))
        {
            // 20log10(4*pi/c) = -147.55 dB
            static const double friis_constant_db = 20.0 * std::log10(4.0 * std::numbers::pi / kSpeedOfLight);
            return -(20.0 * std::log10(distance) + 20.0 * std::log10(params.carrier_hz) + friis_constant_db);
        }
        const double h = params.altitude_m;
        return -(40.0 * std::log10(distance) - 20.0 * std::log10(h * h));
    }

    double capacity_bps(double bandwidth_hz, double snr)
    {
        return bandwidth_hz * std::log2(1.0 + std::pow(10.0, snr / 10.0));
    }

    double dbm_to_watts(double dbm) noexcept
    {
        return std::pow(10.0, (dbm - 30.0) / 10.0);
    }

    LinkBudget link_budget(double distance, const ChannelParams& params)
    {
        LinkBudget link;
        link.snr_db = snr_db(params.tx_power_dbm, path_gain_db(std::max(distance, kMinLinkDistanceM), params),
                             params.noise_dbm);
        link.connected = link.snr_db >= params.min_snr_db;
        link.capacity_bps = capacity_bps(params.bandwidth_hz, link.snr_db);
        return link;
    }

    LinkBudget link_budget(GeoPosition a, GeoPosition b, const ChannelParams& params)
    {
        return link_budget(distance_m(a, b), params);
    }

    std::vector<LinkBudget> link_matrix(std::span<const GeoPosition> positions, const ChannelParams& params)
    {
        const std::size_t n = positions.size();
        std::vector<LinkBudget> matrix(n * n);
        for (std::size_t i = 0; i < n; ++i)
        {
            for (std::size_t j = i + 1; j < n; ++j)
            {
                const LinkBudget link = link_budget(positions[i], positions[j], params);
                matrix[i * n + j] = link;
                matrix[j * n + i] = link;
            }
        }
        return matrix;
    }

    Adjacency adjacency_from(std::span<const LinkBudget> matrix, std::size_t node_count)
    {
        Adjacency adjacency(node_count);
        for (std::size_t i = 0; i < node_count; ++i)
        {
            for (std::size_t j = 0; j < node_count; ++j)
            {
                if (i != j && matrix[i * node_count + j].connected)
                {
                    adjacency[i].push_back(static_cast<int>(j));
                }
            }
        }
        return adjacency;
    }

    Adjacency neighbor_sets(std::span<const GeoPosition> positions, const ChannelParams& params)
    {
        return adjacency_from(link_matrix(positions, params), positions.size());
    }

    double tx_delay_s(double payload_bits, const LinkBudget& link)
    {
        if (!link.connected || !(link.capacity_bps > 0.0))
        {
            throw DisconnectedLink();
        }
        return payload_bits / link.capacity_bps;
    }
}
