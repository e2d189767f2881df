#pragma once

#include "uavsplit/channel.hpp"
#include "uavsplit/config.hpp"
#include "uavsplit/early_exit.hpp"
#include "uavsplit/mobility.hpp"
#include "uavsplit/rng.hpp"

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

namespace uavsplit
{
    /// One inference job moving through the layered model.
    struct TaskInstance
    {
        int task_id = -1;
        int origin_node = -1;
        double created_at_s = 0.0;
        /// Earliest time the current holder may compute on it (arrival or delivery).
        double available_at_s = 0.0;
        /// First unfinished layer on the task's path (0-based).
        int next_layer = 0;
        double in_layer_progress_gflops = 0.0;
        /// Sorted; always contains origin_node.
        std::vector<int> visited_nodes;
        std::optional<ExitLabel> committed_exit;
        std::optional<double> completed_at_s;
        std::optional<double> completion_accuracy;

        /// Work credited to this task on any node, including discarded partial layers.
        double processed_gflops = 0.0;
        double discarded_gflops = 0.0;
        int hops = 0;

        bool visited(int node) const noexcept;
        void mark_visited(int node);
    };

    /// Layers on the task's path: the full model, or exit layer + branch once committed.
    int path_layers(const TaskInstance& task, const ModelProfile& profile) noexcept;
    double layer_cost(const TaskInstance& task, const ModelProfile& profile, int layer) noexcept;
    double remaining_gflops(const TaskInstance& task, const ModelProfile& profile) noexcept;
    /// Total work of the task's committed path (full depth if uncommitted).
    double required_gflops(const TaskInstance& task, const ModelProfile& profile) noexcept;
    /// Size of the data handed off if the task moves now.
    double handoff_bits(const TaskInstance& task, const ModelProfile& profile) noexcept;

    struct NodeState
    {
        int node_id = -1;
        double capability_gflops = 0.0;
        CircularTrajectory trajectory;
        std::deque<TaskInstance> queue;
        double phi_gflops = 0.0;
        /// Remaining GFLOPs over everything in `queue`, maintained incrementally.
        double total_load_gflops = 0.0;
        double prev_total_load_gflops = 0.0;
        ExitState exit;
        double energy_consumed_j = 0.0;
        double compute_energy_j = 0.0;
        double tx_energy_j = 0.0;
        double processed_gflops = 0.0;
        /// An outgoing transfer is in flight; at most one per sender.
        bool transmitting = false;
        std::int64_t tasks_created = 0;
        std::int64_t tasks_completed = 0;

        double recompute_load(const ModelProfile& profile) const noexcept;
    };

    /// Per-node arrival clock.
    class ArrivalStream
    {
    public:
        ArrivalStream(CounterRng rng, ArrivalProcess process, double mean_s) noexcept;

        double next_arrival_s() const noexcept { return next_s_; }
        double pop() noexcept;

    private:
        CounterRng rng_;
        ArrivalProcess process_;
        double mean_s_;
        std::int64_t count_ = 0;
        double next_s_ = 0.0;
    };

    /// Appends every arrival in [t0, t0 + dt) to the node's queue; returns how many.
    int generate_tasks(NodeState& node, ArrivalStream& arrivals, double t0, double dt, const ModelProfile& profile,
                       std::int64_t& next_task_id);

    struct ComputeOutcome
    {
        std::vector<TaskInstance> completed;
        /// (task id, exit, time) for tasks that bound to an early exit this step.
        struct Commit
        {
            int task_id;
            ExitLabel label;
            double time_s;
        };
        std::vector<Commit> commits;
        double gflops = 0.0;
    };

    /// Serve the head of the queue for [t0, t0 + dt) at the node's capability,
    /// crossing layer boundaries, binding early exits, and completing tasks.
    /// Compute energy is charged per GFLOP.
    ComputeOutcome advance_compute(NodeState& node, double t0, double dt, const ModelProfile& profile,
                                   double joules_per_gflop);

    struct InFlightTransfer
    {
        TaskInstance task;
        int from_node = -1;
        int to_node = -1;
        double payload_bits = 0.0;
        double capacity_bps = 0.0;
        double remaining_bits = 0.0;
        double started_at_s = 0.0;
        double tx_energy_j = 0.0;

        double delivery_time_s() const noexcept { return started_at_s + payload_bits / capacity_bps; }
    };

    /// Pops the head task of `from`, discards its in-layer progress, and
    /// charges the sender (payload / capacity) * P transmit energy. Throws
    /// DisconnectedLink when the link is down.
    InFlightTransfer start_transfer(NodeState& from, int to_node, const LinkBudget& link, double now_s,
                                    const ModelProfile& profile, double tx_power_w);

    enum class TransferStatus
    {
        InProgress,
        Delivered,
        Aborted,
    };

    /// Advance by one step. Delivery happens at the exact held-rate time if it
    /// falls inside the step; otherwise a link that is down at the end of the
    /// step aborts the transfer.
    TransferStatus advance_transfer(InFlightTransfer& transfer, double t0, double dt, bool link_connected) noexcept;

    struct TraceEvent
    {
        enum class Kind
        {
            TransferStarted,
            TransferDelivered,
            TransferAborted,
            ExitCommitted,
            TaskCompleted,
        };

        Kind kind = Kind::TaskCompleted;
        double time_s = 0.0;
        int task_id = -1;
        int node = -1;
        int peer = -1;
        double payload_bits = 0.0;
        double capacity_bps = 0.0;
        double energy_j = 0.0;
        double latency_s = 0.0;
        double accuracy = 0.0;
        double processed_gflops = 0.0;
        double required_gflops = 0.0;
        double discarded_gflops = 0.0;
        ExitLabel label = ExitLabel::Full;

        friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
    };

    struct NodeSummary
    {
        int node_id = -1;
        double capability_gflops = 0.0;
        double processed_gflops = 0.0;
        double energy_j = 0.0;
        double compute_energy_j = 0.0;
        double tx_energy_j = 0.0;
        std::int64_t tasks_created = 0;
        std::int64_t tasks_completed = 0;
        std::int64_t queued_at_end = 0;

        friend bool operator==(const NodeSummary&, const NodeSummary&) = default;
    };

    struct EpochSample
    {
        double time_s = 0.0;
        double mean_load_gflops = 0.0;
        double mean_phi_gflops = 0.0;
        int nodes_l1 = 0;
        int nodes_l2 = 0;
        int transfers_in_flight = 0;

        friend bool operator==(const EpochSample&, const EpochSample&) = default;
    };

    /// Per-run aggregates. Optional metrics are empty when undefined (no
    /// completed tasks, no transfers, no processed work).
    struct RunResult
    {
        std::uint64_t seed = 0;
        StrategyKind strategy = StrategyKind::Distributed;
        bool early_exit = false;
        int worker_count = 0;
        double sim_time_s = 0.0;

        std::int64_t tasks_created = 0;
        std::int64_t completed_tasks = 0;
        std::int64_t tasks_queued = 0;
        std::int64_t tasks_in_flight = 0;
        std::int64_t transfers_started = 0;
        std::int64_t transfers_delivered = 0;
        std::int64_t transfers_aborted = 0;

        double total_energy_j = 0.0;
        double compute_energy_j = 0.0;
        double tx_energy_j = 0.0;
        double total_processed_gflops = 0.0;
        double tasks_per_s = 0.0;
        double mean_remaining_gflops = 0.0;

        std::optional<double> mean_latency_s;
        std::optional<double> mean_transfer_time_s;
        std::optional<double> jain_fairness;
        std::optional<double> energy_per_task_j;
        std::optional<double> mean_accuracy;
        std::optional<double> fom;

        std::vector<NodeSummary> nodes;
        std::vector<EpochSample> timeline;
        std::vector<TraceEvent> trace;

        friend bool operator==(const RunResult&, const RunResult&) = default;
    };

    /// Fixed-step simulation of one run. Single-threaded; every tick visits
    /// nodes in ascending id order.
    ///
    /// Step k covers [k*dt, (k+1)*dt). When k is a multiple of the epoch
    /// length the decision epoch runs first: adjacency refresh, advertisement
    /// snapshot, phi update, congestion/exit update, then strategy decisions.
    /// Then arrivals, transfers, and computation advance, in that order.
    class Simulation
    {
    public:
        Simulation(ValidatedConfig config, std::uint64_t seed);

        void step();
        void run();
        bool finished() const noexcept { return step_ >= config_.total_steps(); }

        RunResult result() const;

        double now_s() const noexcept;
        std::int64_t step_index() const noexcept { return step_; }
        const ValidatedConfig& config() const noexcept { return config_; }
        const std::vector<NodeState>& nodes() const noexcept { return nodes_; }
        const std::vector<InFlightTransfer>& transfers() const noexcept { return transfers_; }
        const Adjacency& adjacency() const noexcept { return adjacency_; }
        std::int64_t tasks_created() const noexcept { return created_; }
        std::int64_t tasks_completed() const noexcept { return completed_; }

    private:
        double time_at(std::int64_t step) const noexcept;
        void decision_epoch(double t);
        void complete(NodeState& node, TaskInstance& task);
        void record(const TraceEvent& event);

        ValidatedConfig config_;
        std::uint64_t seed_;
        ChannelParams channel_;
        double tx_power_w_;
        double reference_payload_bits_;

        std::vector<NodeState> nodes_;
        std::vector<ArrivalStream> arrivals_;
        std::vector<CounterRng> strategy_rng_;
        std::vector<InFlightTransfer> transfers_;
        Adjacency adjacency_;
        std::vector<LinkBudget> links_;

        std::int64_t step_ = 0;
        std::int64_t next_task_id_ = 0;
        std::int64_t created_ = 0;
        std::int64_t completed_ = 0;

        double latency_sum_ = 0.0;
        // Completions per exit label; the mean accuracy is a weighted sum of these.
        std::array<std::int64_t, 3> completed_by_exit_{};
        std::int64_t transfers_started_ = 0;
        std::int64_t transfers_delivered_ = 0;
        std::int64_t transfers_aborted_ = 0;
        double transfer_time_sum_ = 0.0;
        double remaining_sum_ = 0.0;
        std::int64_t epochs_ = 0;

        std::vector<EpochSample> timeline_;
        std::vector<TraceEvent> trace_;
    };

    /// Runs one simulation with the strategy, early-exit mode, and seed given
    /// here (overriding the config's own). Throws ConfigError.
    RunResult run_simulation(const ValidatedConfig& config, StrategyKind strategy, bool early_exit, std::uint64_t seed);
    RunResult run_simulation(const ValidatedConfig& config);
}
