#pragma once

#include "uavsplit/config.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace uavsplit
{
    /// Planar position in meters.
    struct GeoPosition
    {
        double x = 0.0;
        double y = 0.0;

        friend bool operator==(const GeoPosition&, const GeoPosition&) = default;
    };

    double distance_m(GeoPosition a, GeoPosition b) noexcept;

    struct ChannelParams
    {
        double tx_power_dbm = 30.0;
        double noise_dbm = -85.0;
        double bandwidth_hz = 1e7;
        double min_snr_db = 3.0;
        double carrier_hz = 2.4e9;
        double altitude_m = 100.0; // h_t = h_r

        static ChannelParams from(const SimConfig& config) noexcept;
    };

    struct LinkBudget
    {
        double snr_db = 0.0;
        double capacity_bps = 0.0;
        bool connected = false;
    };

    class DisconnectedLink : public std::runtime_error
    {
    public:
        DisconnectedLink() : std::runtime_error("link below minimum SNR") {}
    };

    inline constexpr double kSpeedOfLight = 299792458.0;

    /// Links are evaluated at no less than this separation so coincident
    /// trajectory points do not produce an infinite gain.
    inline constexpr double kMinLinkDistanceM = 1.0;

    /// Two-ray crossover distance d_c = 4*pi*h_t*h_r*f/c.
    double crossover_distance_m(const ChannelParams& params) noexcept;

    /// Two-ray ground-reflection path gain in dB (negative). Free-space Friis
    /// below the crossover distance, fourth-power law above it. Throws
    /// std::invalid_argument for a non-positive distance.
    double path_gain_db(double distance_m, const ChannelParams& params);

    constexpr double snr_db(double tx_power_dbm, double gain_db, double noise_dbm) noexcept
    {
        return tx_power_dbm + gain_db - noise_dbm;
    }

    /// Shannon capacity B*log2(1 + snr) with snr given in dB.
    double capacity_bps(double bandwidth_hz, double snr_db);

    double dbm_to_watts(double dbm) noexcept;

    LinkBudget link_budget(double distance_m, const ChannelParams& params);
    LinkBudget link_budget(GeoPosition a, GeoPosition b, const ChannelParams& params);

    /// Sorted neighbor ids per node; symmetric, no self-links.
    using Adjacency = std::vector<std::vector<int>>;

    /// Pairwise link budgets for n positions, row-major n*n, diagonal unused.
    std::vector<LinkBudget> link_matrix(std::span<const GeoPosition> positions, const ChannelParams& params);

    Adjacency adjacency_from(std::span<const LinkBudget> matrix, std::size_t node_count);

    /// M_i(t): j is a neighbor of i iff SNR_ij >= min_snr_db and i != j.
    Adjacency neighbor_sets(std::span<const GeoPosition> positions, const ChannelParams& params);

    /// payload / capacity; throws DisconnectedLink if the link is down.
    double tx_delay_s(double payload_bits, const LinkBudget& link);
}
