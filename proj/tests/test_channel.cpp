#include "doctest.h"

#include "uavsplit/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace uavsplit;

namespace
{
    // Independent closed forms.
    double friis_db(double d, double f)
    {
        return -20.0 * std::log10(4.0 * std::numbers::pi * d * f / 299792458.0);
    }

    double shannon(double b, double snr_db)
    {
        return b * std::log2(1.0 + std::pow(10.0, snr_db / 10.0));
    }
}

TEST_SUITE("channel")
{
    TEST_CASE("path gain closed forms")
    {
        const ChannelParams p;
        CHECK(crossover_distance_m(p) == doctest::Approx(1006005.6105).epsilon(1e-9));
        CHECK(path_gain_db(1000.0, p) == doctest::Approx(-100.05200806).epsilon(1e-9));
        CHECK(path_gain_db(1000.0, p) == doctest::Approx(friis_db(1000.0, 2.4e9)).epsilon(1e-12));
        // Fourth-power branch: -(40 log10 d - 20 log10 h^2).
        CHECK(path_gain_db(2e6, p) == doctest::Approx(-(40.0 * std::log10(2e6) - 80.0)).epsilon(1e-12));
        CHECK(path_gain_db(2e6, p) == doctest::Approx(-172.0412).epsilon(1e-6));

        // f with 20 log10(4 pi f / c) = 0 puts the 1 m gain at 0 dB.
        ChannelParams unit = p;
        unit.carrier_hz = 299792458.0 / (4.0 * std::numbers::pi);
        CHECK(path_gain_db(1.0, unit) == doctest::Approx(0.0).epsilon(1e-9));

        CHECK_THROWS_AS(path_gain_db(0.0, p), std::invalid_argument);
        CHECK_THROWS_AS(path_gain_db(-5.0, p), std::invalid_argument);
    }

    TEST_CASE("path gain monotone and continuous")
    {
        ChannelParams p;
        p.altitude_m = 10.0; // brings the crossover inside a searchable range
        const double dc = crossover_distance_m(p);
        double prev = path_gain_db(1.0, p);
        for (double d = 2.0; d < 10.0 * dc; d *= 1.07)
        {
            const double g = path_gain_db(d, p);
            REQUIRE(g < prev);
            prev = g;
        }
        const double below = path_gain_db(dc * (1.0 - 1e-9), p);
        const double above = path_gain_db(dc * (1.0 + 1e-9), p);
        CHECK(std::abs(below - above) < 0.5);
    }

    TEST_CASE("snr arithmetic")
    {
        CHECK(snr_db(30.0, -100.05, -85.0) == doctest::Approx(14.95));
        CHECK(snr_db(30.0, -115.0, -85.0) == 0.0);
        CHECK(snr_db(30.0, -112.0, -85.0) == 3.0);
        CHECK(link_budget(1000.0, ChannelParams{}).snr_db == doctest::Approx(14.94799194).epsilon(1e-9));
        CHECK(link_budget(10000.0, ChannelParams{}).snr_db == doctest::Approx(-5.0522).epsilon(1e-4));
    }

    TEST_CASE("capacity")
    {
        CHECK(capacity_bps(1e7, 0.0) == doctest::Approx(1e7).epsilon(1e-12));
        CHECK(std::abs(capacity_bps(1e7, 3.0) - 15.827e6) <= 1e3);
        CHECK(capacity_bps(1e7, 3.0) == doctest::Approx(shannon(1e7, 3.0)).epsilon(1e-12));
        CHECK(capacity_bps(1e7, 14.95) == doctest::Approx(50.1171e6).epsilon(1e-5));
        double prev = capacity_bps(1e7, -20.0);
        for (double s = -19.5; s <= 40.0; s += 0.5)
        {
            const double c = capacity_bps(1e7, s);
            REQUIRE(c > prev);
            prev = c;
        }
    }

    TEST_CASE("connectivity threshold is inclusive")
    {
        ChannelParams p;
        // Distance where the SNR is exactly the minimum, by bisection on the oracle.
        double lo = 1.0, hi = 1e5;
        for (int i = 0; i < 200; ++i)
        {
            const double mid = 0.5 * (lo + hi);
            (30.0 + friis_db(mid, 2.4e9) + 85.0 >= 3.0 ? lo : hi) = mid;
        }
        CHECK(lo == doctest::Approx(3957.31).epsilon(1e-5));
        CHECK(std::abs(lo - 3958.0) <= 1.0);
        CHECK(link_budget(lo * (1 - 1e-9), p).connected);
        CHECK_FALSE(link_budget(lo * (1 + 1e-9), p).connected);

        p.min_snr_db = link_budget(2000.0, p).snr_db;
        CHECK(link_budget(2000.0, p).connected);
    }

    TEST_CASE("neighbor sets")
    {
        const ChannelParams p;
        const std::vector<GeoPosition> pair_near{{0, 0}, {1000, 0}};
        const std::vector<GeoPosition> pair_far{{0, 0}, {10000, 0}};
        const std::vector<GeoPosition> single{{5, 5}};
        CHECK(neighbor_sets(pair_near, p) == Adjacency{{1}, {0}});
        CHECK(neighbor_sets(pair_far, p) == Adjacency{{}, {}});
        CHECK(neighbor_sets(single, p) == Adjacency{{}});
    }

    TEST_CASE("link symmetry over random layouts")
    {
        const ChannelParams p;
        std::uint64_t state = 12345;
        auto next = [&] {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            return static_cast<double>(state >> 11) * 0x1.0p-53;
        };
        for (int trial = 0; trial < 50; ++trial)
        {
            std::vector<GeoPosition> pos(25);
            for (auto& q : pos)
            {
                q = {next() * 20000.0, next() * 20000.0};
            }
            const auto m = link_matrix(pos, p);
            const auto adj = neighbor_sets(pos, p);
            const std::size_t n = pos.size();
            for (std::size_t i = 0; i < n; ++i)
            {
                for (std::size_t j = 0; j < n; ++j)
                {
                    if (i == j)
                    {
                        continue;
                    }
                    REQUIRE(m[i * n + j].snr_db == m[j * n + i].snr_db);
                    REQUIRE(m[i * n + j].connected == m[j * n + i].connected);
                    const bool ij = std::ranges::count(adj[i], static_cast<int>(j)) == 1;
                    const bool ji = std::ranges::count(adj[j], static_cast<int>(i)) == 1;
                    REQUIRE(ij == ji);
                    REQUIRE(ij == m[i * n + j].connected);
                    if (m[i * n + j].connected)
                    {
                        REQUIRE(m[i * n + j].capacity_bps ==
                                doctest::Approx(shannon(p.bandwidth_hz, m[i * n + j].snr_db)).epsilon(1e-12));
                    }
                }
                REQUIRE(std::ranges::count(adj[i], static_cast<int>(i)) == 0);
            }
        }
    }

    TEST_CASE("transmission delay")
    {
        const LinkBudget up{6.0, 16e6, true};
        CHECK(tx_delay_s(4e6, up) == 0.25);
        CHECK(tx_delay_s(0.0, up) == 0.0);
        CHECK_THROWS_AS(tx_delay_s(4e6, LinkBudget{0.0, 1e7, false}), DisconnectedLink);
        CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
        CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3));
    }
}
