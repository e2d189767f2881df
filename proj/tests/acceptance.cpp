// Acceptance suite: one pass/fail line per criterion, exit status 1 if any fails.

#include "uavsplit/batch.hpp"
#include "uavsplit/channel.hpp"
#include "uavsplit/diffusive.hpp"
#include "uavsplit/engine.hpp"
#include "uavsplit/metrics.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

using namespace uavsplit;
namespace fs = std::filesystem;

namespace
{
    // Pinned tolerances.
    constexpr double kPhiTol = 1e-6;
    constexpr int kPhiMaxIterations = 200;
    constexpr double kCapacityTolBps = 1e3;
    constexpr double kRangeTargetM = 3958.0;
    constexpr double kRangeTolM = 1.0;
    constexpr double kUnitOracleBudgetS = 1.0;
    constexpr double kEnergyRelTol = 1e-9;
    constexpr double kSuiteBudgetS = 600.0;

    // Desk-scale scenario shared by the trend criteria.
    constexpr double kTrendSimTimeS = 30.0;
    constexpr std::uint64_t kTrendSeeds = 10;
    constexpr double kOverloadArrivalS = 0.050;

    using Clock = std::chrono::steady_clock;

    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    std::string fmt(double v, int precision = 4)
    {
        std::ostringstream s;
        s.precision(precision);
        s << v;
        return s.str();
    }

    double seconds_since(Clock::time_point t0)
    {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }

    SimConfig trend_config(int workers)
    {
        SimConfig c;
        c.worker_count = workers;
        c.max_sim_time_s = kTrendSimTimeS;
        return c;
    }

    std::vector<RunResult> run_seeds(const SimConfig& c, std::uint64_t seeds, std::uint64_t first = 1)
    {
        const auto v = validate_config(c);
        std::vector<RunRequest> requests;
        for (std::uint64_t s = first; s < first + seeds; ++s)
        {
            requests.push_back({v, s});
        }
        return run_batch_parallel(requests, 0);
    }

    MetricSummary summary_of(const std::vector<RunResult>& runs, Metric m)
    {
        return aggregate_runs(runs)[m];
    }

    int run_command(const std::string& command)
    {
        const int status = std::system((command + " >/dev/null 2>&1").c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string slurp(const fs::path& p)
    {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    RunResult strip_labels(RunResult r)
    {
        r.strategy = StrategyKind::Distributed;
        r.early_exit = false;
        return r;
    }

    // --- 1 ---------------------------------------------------------------
    Outcome unit_oracles()
    {
        const auto t0 = Clock::now();
        std::vector<std::string> failures;

        auto pair = [](double fa, double fb, double d) {
            double a = phi_init(fa), b = phi_init(fb);
            for (int i = 0; i < kPhiMaxIterations; ++i)
            {
                const NeighborAdvert nb{b, d}, na{a, d};
                const double a2 = phi_update(fa, std::span(&nb, 1));
                const double b2 = phi_update(fb, std::span(&na, 1));
                a = a2;
                b = b2;
            }
            return std::pair{a, b};
        };
        const auto [s0a, s0b] = pair(400, 400, 0.0);
        if (std::abs(s0a - 400) > kPhiTol || std::abs(s0b - 400) > kPhiTol)
        {
            failures.push_back("symmetric pair d=0 -> " + fmt(s0a, 12));
        }
        const auto [s1a, s1b] = pair(400, 400, 0.001);
        const double s1 = 1.0 / (1.0 / 400.0 + 0.001);
        if (std::abs(s1a - s1) > kPhiTol || std::abs(s1b - s1) > kPhiTol)
        {
            failures.push_back("symmetric pair d=0.001 -> " + fmt(s1a, 12));
        }
        const auto [aa, ab] = pair(400, 200, 0.0);
        if (std::abs(aa - 300) > kPhiTol || std::abs(ab - 240) > kPhiTol)
        {
            failures.push_back("asymmetric pair -> (" + fmt(aa, 12) + ", " + fmt(ab, 12) + ")");
        }

        const double cap = capacity_bps(1e7, 3.0);
        if (std::abs(cap - 15.827e6) > kCapacityTolBps)
        {
            failures.push_back("capacity at 3 dB = " + fmt(cap, 10));
        }

        const std::vector<double> jain_in{2.0, 4.0};
        if (jain_fairness(jain_in) != 0.9)
        {
            failures.push_back("jain([2,4]) = " + fmt(jain_fairness(jain_in), 17));
        }

        // Largest connected separation at default parameters, by bisection on the link budget.
        const ChannelParams p = ChannelParams::from(SimConfig{});
        double lo = 1.0, hi = 1e5;
        for (int i = 0; i < 200; ++i)
        {
            const double mid = 0.5 * (lo + hi);
            (link_budget(mid, p).connected ? lo : hi) = mid;
        }
        if (std::abs(lo - kRangeTargetM) > kRangeTolM)
        {
            failures.push_back("range = " + fmt(lo, 8) + " m");
        }

        const double elapsed = seconds_since(t0);
        if (elapsed >= kUnitOracleBudgetS)
        {
            failures.push_back("took " + fmt(elapsed) + " s");
        }
        Outcome o;
        o.pass = failures.empty();
        o.detail = "phi (" + fmt(aa, 10) + ", " + fmt(ab, 10) + "), sym " + fmt(s1a, 10) + ", capacity " +
                   fmt(cap / 1e6, 8) + " Mbps, range " + fmt(lo, 7) + " m, " + fmt(elapsed * 1e3, 3) + " ms";
        for (const auto& f : failures)
        {
            o.detail += "; FAILED " + f;
        }
        return o;
    }

    // --- 2 ---------------------------------------------------------------
    Outcome determinism()
    {
        const fs::path base = fs::temp_directory_path() / ("uavsplit_accept_" + std::to_string(::getpid()));
        fs::remove_all(base);
        const std::string args = " --suite exit --workers 10,20 --runs 3 --max-time-s 5 --seed 17 --jobs 0 --out ";
        const int a = run_command(std::string(UAVSPLIT_CLI_PATH) + args + (base / "a").string());
        const int b = run_command(std::string(UAVSPLIT_CLI_PATH) + args + (base / "b").string());
        const std::string ra = slurp(base / "a" / "runs.csv");
        const std::string rb = slurp(base / "b" / "runs.csv");
        const auto lines = std::count(ra.begin(), ra.end(), '\n');
        fs::remove_all(base);
        Outcome o;
        o.pass = a == 0 && b == 0 && lines == 61 && ra == rb;
        o.detail = "two CLI processes, exit " + std::to_string(a) + "/" + std::to_string(b) + ", " +
                   std::to_string(lines - 1) + " rows, runs.csv " + (ra == rb ? "byte-identical" : "DIFFERS");
        return o;
    }

    // --- 3 ---------------------------------------------------------------
    Outcome energy_ledger()
    {
        double worst = 0.0;
        int checked = 0;
        for (auto kind : kAllStrategies)
        {
            for (bool exit : {false, true})
            {
                auto c = trend_config(30);
                c.max_sim_time_s = 20.0;
                c.strategy = kind;
                c.early_exit = exit;
                c.record_trace = true;
                for (const RunResult& r : run_seeds(c, 2))
                {
                    const double p_w = std::pow(10.0, (c.tx_power_dbm - 30.0) / 10.0);
                    double tx = 0.0;
                    for (const auto& e : r.trace)
                    {
                        if (e.kind == TraceEvent::Kind::TransferStarted)
                        {
                            tx += e.payload_bits / e.capacity_bps * p_w;
                        }
                    }
                    double processed = 0.0;
                    for (const auto& n : r.nodes)
                    {
                        processed += n.processed_gflops;
                    }
                    const double expected = processed * c.energy_per_gflop_j + tx;
                    worst = std::max(worst, std::abs(r.total_energy_j - expected) / expected);
                    ++checked;
                }
            }
        }
        return {worst <= kEnergyRelTol,
                std::to_string(checked) + " runs, worst relative error " + fmt(worst, 3) + " (limit 1e-9)"};
    }

    // --- 4 ---------------------------------------------------------------
    Outcome worker_trends()
    {
        const std::vector<int> workers{10, 30, 50};
        const std::vector<StrategyKind> kinds{StrategyKind::Distributed, StrategyKind::Greedy, StrategyKind::Random,
                                              StrategyKind::RandomAcyclic};
        std::map<std::pair<int, StrategyKind>, double> fom;
        std::map<int, double> latency;
        for (int w : workers)
        {
            for (auto k : kinds)
            {
                auto c = trend_config(w);
                c.strategy = k;
                const auto runs = run_seeds(c, kTrendSeeds);
                fom[{w, k}] = summary_of(runs, Metric::Fom).mean;
                if (k == StrategyKind::Distributed)
                {
                    latency[w] = summary_of(runs, Metric::MeanLatency).mean;
                }
            }
        }
        const bool latency_down = latency[50] < latency[10];
        bool ordering = true;
        std::string detail = "distributed latency at 10/30/50 workers " + fmt(latency[10]) + " / " +
                             fmt(latency[30]) + " / " + fmt(latency[50]) + " s" +
                             (latency_down ? "" : " (not decreasing)");
        for (int w : {30, 50})
        {
            detail += "; FOM@" + std::to_string(w) + " dist " + fmt(fom[{w, StrategyKind::Distributed}], 5);
            for (auto k : {StrategyKind::Greedy, StrategyKind::Random, StrategyKind::RandomAcyclic})
            {
                detail += " " + std::string(to_string(k)) + " " + fmt(fom[{w, k}], 5);
                ordering = ordering && fom[{w, StrategyKind::Distributed}] > fom[{w, k}];
            }
        }
        return {latency_down && ordering, detail};
    }

    // --- 5 ---------------------------------------------------------------
    Outcome arrival_crossover()
    {
        std::map<std::pair<double, StrategyKind>, MetricSummary> fom;
        for (double arrival : {0.060, 0.100})
        {
            for (auto k : {StrategyKind::Distributed, StrategyKind::LocalOnly})
            {
                auto c = trend_config(30);
                c.task_arrival_mean_s = arrival;
                c.strategy = k;
                fom[{arrival, k}] = summary_of(run_seeds(c, kTrendSeeds), Metric::Fom);
            }
        }
        const auto& d60 = fom[{0.060, StrategyKind::Distributed}];
        const auto& l60 = fom[{0.060, StrategyKind::LocalOnly}];
        const auto& d100 = fom[{0.100, StrategyKind::Distributed}];
        const auto& l100 = fom[{0.100, StrategyKind::LocalOnly}];
        const bool stressed = d60.mean > l60.mean;
        const bool relaxed = l100.mean >= d100.mean;
        std::string detail = "60 ms: dist " + fmt(d60.mean, 5) + " vs local " + fmt(l60.mean, 5) +
                             (stressed ? " ok" : " WRONG ORDER") + "; 100 ms: local " + fmt(l100.mean, 5) +
                             " (ci " + fmt(l100.ci95, 3) + ") vs dist " + fmt(d100.mean, 5) + " (ci " +
                             fmt(d100.ci95, 3) + ")" + (relaxed ? " ok" : " WRONG ORDER");
        return {stressed && relaxed, detail};
    }

    // --- 6 ---------------------------------------------------------------
    Outcome area_trend()
    {
        const std::vector<double> areas{10000.0, 20000.0, 40000.0};
        std::vector<MetricSummary> fom;
        for (double a : areas)
        {
            auto c = trend_config(30);
            c.area_side_m = a;
            fom.push_back(summary_of(run_seeds(c, kTrendSeeds), Metric::Fom));
        }
        int inversions = 0;
        bool inversions_within_ci = true;
        for (std::size_t i = 0; i + 1 < fom.size(); ++i)
        {
            if (fom[i + 1].mean > fom[i].mean)
            {
                ++inversions;
                inversions_within_ci =
                    inversions_within_ci && fom[i + 1].mean - fom[i].mean <= std::max(fom[i].ci95, fom[i + 1].ci95);
            }
        }
        const bool pass = inversions == 0 || (inversions == 1 && inversions_within_ci);
        return {pass, "distributed FOM at 10/20/40 km: " + fmt(fom[0].mean, 5) + " / " + fmt(fom[1].mean, 5) + " / " +
                          fmt(fom[2].mean, 5) + ", inversions " + std::to_string(inversions)};
    }

    // --- 7 ---------------------------------------------------------------
    Outcome early_exit_overload()
    {
        auto c = trend_config(30);
        c.task_arrival_mean_s = kOverloadArrivalS;
        c.early_exit = false;
        const auto off = run_seeds(c, kTrendSeeds);
        c.early_exit = true;
        const auto on = run_seeds(c, kTrendSeeds);

        const double lat_off = summary_of(off, Metric::MeanLatency).mean;
        const double lat_on = summary_of(on, Metric::MeanLatency).mean;
        const double rem_off = summary_of(off, Metric::MeanRemaining).mean;
        const double rem_on = summary_of(on, Metric::MeanRemaining).mean;
        const double acc_off = summary_of(off, Metric::MeanAccuracy).mean;
        const double acc_on = summary_of(on, Metric::MeanAccuracy).mean;
        bool acc_off_exact = true;
        for (const auto& r : off)
        {
            acc_off_exact = acc_off_exact && r.mean_accuracy && *r.mean_accuracy == 0.95;
        }
        const bool pass =
            lat_on < lat_off && rem_on < rem_off && acc_on >= 0.6 && acc_on < 0.95 && acc_off_exact;
        return {pass, "50 ms arrivals, 30 workers: latency " + fmt(lat_off) + " -> " + fmt(lat_on) +
                          " s, remaining " + fmt(rem_off, 5) + " -> " + fmt(rem_on, 5) + " GFLOPs, accuracy " +
                          fmt(acc_off) + " -> " + fmt(acc_on)};
    }

    // --- 8 ---------------------------------------------------------------
    Outcome equivalences()
    {
        std::vector<std::string> failures;
        int compared = 0;
        for (std::uint64_t seed = 1; seed <= 3; ++seed)
        {
            auto c = trend_config(30);
            c.max_sim_time_s = 20.0;
            c.record_trace = true;
            c.strategy = StrategyKind::LocalOnly;
            const auto local = run_seeds(c, 1, seed).front();
            c.strategy = StrategyKind::Distributed;
            c.gamma_threshold = std::numeric_limits<double>::infinity();
            const auto dist = run_seeds(c, 1, seed).front();
            if (!(strip_labels(local) == strip_labels(dist)) || local.trace.empty())
            {
                failures.push_back("gamma=inf seed " + std::to_string(seed));
            }

            for (auto kind : {StrategyKind::Distributed, StrategyKind::Random})
            {
                auto e = trend_config(30);
                e.max_sim_time_s = 20.0;
                e.record_trace = true;
                e.strategy = kind;
                e.task_arrival_mean_s = kOverloadArrivalS;
                const auto off = run_seeds(e, 1, seed).front();
                e.early_exit = true;
                e.tau_med = std::numeric_limits<double>::max();
                e.tau_high = std::numeric_limits<double>::infinity();
                const auto never = run_seeds(e, 1, seed).front();
                if (!(strip_labels(off) == strip_labels(never)))
                {
                    failures.push_back("early-exit off seed " + std::to_string(seed));
                }
            }
            compared += 3;
        }

        int deliveries = 0;
        for (double p : {0.1, 1.0})
        {
            auto c = trend_config(30);
            c.record_trace = true;
            c.strategy = StrategyKind::RandomAcyclic;
            c.strategy_probabilities.random_acyclic = p;
            for (const RunResult& r : run_seeds(c, 3))
            {
                std::map<int, std::set<int>> visited;
                for (const auto& e : r.trace)
                {
                    if (e.kind == TraceEvent::Kind::TransferStarted)
                    {
                        visited[e.task_id].insert(e.node);
                    }
                    else if (e.kind == TraceEvent::Kind::TransferDelivered)
                    {
                        ++deliveries;
                        if (!visited[e.task_id].insert(e.peer).second)
                        {
                            failures.push_back("revisit of node " + std::to_string(e.peer) + " by task " +
                                               std::to_string(e.task_id));
                        }
                    }
                }
            }
        }
        std::string detail = std::to_string(compared) + " matched-trace pairs, " + std::to_string(deliveries) +
                             " random-acyclic deliveries checked";
        for (const auto& f : failures)
        {
            detail += "; FAILED " + f;
        }
        return {failures.empty(), detail};
    }

    // --- 9 ---------------------------------------------------------------
    Outcome property_suites()
    {
        const auto t0 = Clock::now();
        const int status = run_command(UAVSPLIT_TESTS_PATH);
        const double elapsed = seconds_since(t0);
        return {status == 0 && elapsed < kSuiteBudgetS,
                "standalone property binary exit " + std::to_string(status) + " in " + fmt(elapsed) + " s (limit " +
                    fmt(kSuiteBudgetS) + " s)"};
    }
}

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"unit oracles", unit_oracles},
        {"determinism across processes", determinism},
        {"energy ledger", energy_ledger},
        {"worker sweep trends", worker_trends},
        {"arrival-rate crossover", arrival_crossover},
        {"area trend", area_trend},
        {"early exit under overload", early_exit_overload},
        {"behavioral equivalences", equivalences},
        {"property suites standalone", property_suites},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        const auto t0 = Clock::now();
        Outcome o;
        try
        {
            o = criteria[i].second();
        }
        catch (const std::exception& e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << " " << criteria[i].first << " ["
                  << fmt(seconds_since(t0), 3) << " s]: " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
