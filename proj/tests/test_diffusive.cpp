#include "doctest.h"

#include "uavsplit/diffusive.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

using namespace uavsplit;

namespace
{
    // Alternating pair iteration from phi0 = F.
    std::pair<double, double> iterate_pair(double fa, double fb, double d, int iterations)
    {
        double a = phi_init(fa);
        double b = phi_init(fb);
        for (int i = 0; i < iterations; ++i)
        {
            const NeighborAdvert to_b{b, d};
            const NeighborAdvert to_a{a, d};
            const double na = phi_update(fa, std::span(&to_b, 1));
            const double nb = phi_update(fb, std::span(&to_a, 1));
            a = na;
            b = nb;
        }
        return {a, b};
    }
}

TEST_SUITE("diffusive")
{
    TEST_CASE("initialization")
    {
        CHECK(phi_init(400.0) == 400.0);
        CHECK(phi_init(250.0) == 250.0);
        CHECK_THROWS_AS(phi_init(0.0), std::invalid_argument);
        CHECK_THROWS_AS(phi_init(-3.0), std::invalid_argument);
    }

    TEST_CASE("isolated node keeps its capability")
    {
        for (double f : {1e-3, 1.0, 123.456, 400.0, 1e9})
        {
            CHECK(phi_update(f, {}) == f);
        }
    }

    TEST_CASE("single update arithmetic")
    {
        const std::vector<NeighborAdvert> n{{400.0, 0.0}, {200.0, 0.01}};
        // (1/400 + max(1/400, 0.01 + 1/200)) / 3
        CHECK(phi_update(400.0, n) == doctest::Approx(3.0 / (0.0025 + 0.015)).epsilon(1e-12));
    }

    TEST_CASE("pair fixed points")
    {
        auto [a, b] = iterate_pair(400.0, 400.0, 0.0, 200);
        CHECK(std::abs(a - 400.0) < 1e-6);
        CHECK(std::abs(b - 400.0) < 1e-6);

        std::tie(a, b) = iterate_pair(400.0, 400.0, 0.001, 200);
        CHECK(std::abs(a - 1.0 / (1.0 / 400.0 + 0.001)) < 1e-6);
        CHECK(std::abs(a - 285.714285714) < 1e-6);
        CHECK(std::abs(b - 285.714285714) < 1e-6);

        std::tie(a, b) = iterate_pair(400.0, 200.0, 0.0, 200);
        CHECK(std::abs(a - 300.0) < 1e-6);
        CHECK(std::abs(b - 240.0) < 1e-6);
    }

    TEST_CASE("monotone in delay and capability, always positive")
    {
        std::uint64_t state = 99;
        auto next = [&] {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            return static_cast<double>(state >> 11) * 0x1.0p-53;
        };
        for (int trial = 0; trial < 2000; ++trial)
        {
            const double f = 1.0 + 800.0 * next();
            std::vector<NeighborAdvert> n(1 + trial % 6);
            for (auto& k : n)
            {
                k = {1.0 + 800.0 * next(), 0.3 * next()};
            }
            const double base = phi_update(f, n);
            REQUIRE(base > 0.0);

            auto slower = n;
            slower[static_cast<std::size_t>(trial) % n.size()].tx_delay_s += 0.05 * next();
            REQUIRE(phi_update(f, slower) <= base);

            REQUIRE(phi_update(f * 1.01, n) > base);
        }
    }
}
