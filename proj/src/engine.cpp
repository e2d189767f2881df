#include "uavsplit/engine.hpp"

#include "uavsplit/allocation.hpp"
#include "uavsplit/diffusive.hpp"
#include "uavsplit/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace uavsplit
{
    namespace
    {
        // Residual work below this is float noise from the step arithmetic.
        constexpr double kWorkEpsilonGflops = 1e-12;

        int committed_exit_layer(const TaskInstance& task, const ModelProfile& profile) noexcept
        {
            return task.committed_exit ? profile.exit_layer(*task.committed_exit) : profile.exit_full;
        }
    }

    bool TaskInstance::visited(int node) const noexcept
    {
        return std::binary_search(visited_nodes.begin(), visited_nodes.end(), node);
    }

    void TaskInstance::mark_visited(int node)
    {
        const auto it = std::lower_bound(visited_nodes.begin(), visited_nodes.end(), node);
        if (it == visited_nodes.end() || *it != node)
        {
            visited_nodes.insert(it, node);
        }
    }

    int path_layers(const TaskInstance& task, const ModelProfile& profile) noexcept
    {
        if (!task.committed_exit)
        {
            return profile.layer_count;
        }
        return profile.exit_layer(*task.committed_exit) + profile.exit_branch_layers;
    }

    double layer_cost(const TaskInstance& task, const ModelProfile& profile, int layer) noexcept
    {
        if (layer < committed_exit_layer(task, profile))
        {
            return profile.layer_gflops[static_cast<std::size_t>(layer)];
        }
        return profile.branch_cost();
    }

    double remaining_gflops(const TaskInstance& task, const ModelProfile& profile) noexcept
    {
        double total = 0.0;
        const int layers = path_layers(task, profile);
        for (int l = task.next_layer; l < layers; ++l)
        {
            total += layer_cost(task, profile, l);
        }
        return total - task.in_layer_progress_gflops;
    }

    double required_gflops(const TaskInstance& task, const ModelProfile& profile) noexcept
    {
        return profile.path_gflops(task.committed_exit.value_or(ExitLabel::Full));
    }

    double handoff_bits(const TaskInstance& task, const ModelProfile& profile) noexcept
    {
        const int exit = committed_exit_layer(task, profile);
        const int index = std::min(task.next_layer, exit);
        return profile.layer_output_bits[static_cast<std::size_t>(std::min(index, profile.layer_count - 1))];
    }

    double NodeState::recompute_load(const ModelProfile& profile) const noexcept
    {
        double total = 0.0;
        for (const TaskInstance& task : queue)
        {
            total += remaining_gflops(task, profile);
        }
        return total;
    }

    ArrivalStream::ArrivalStream(CounterRng rng, ArrivalProcess process, double mean_s) noexcept
        : rng_(rng), process_(process), mean_s_(mean_s)
    {
        next_s_ = process_ == ArrivalProcess::Deterministic ? mean_s_ : rng_.exponential(mean_s_);
    }

    double ArrivalStream::pop() noexcept
    {
        const double arrival = next_s_;
        ++count_;
        if (process_ == ArrivalProcess::Deterministic)
        {
            next_s_ = static_cast<double>(count_ + 1) * mean_s_;
        }
        else
        {
            next_s_ = arrival + rng_.exponential(mean_s_);
        }
        return arrival;
    }

    int generate_tasks(NodeState& node, ArrivalStream& arrivals, double t0, double dt, const ModelProfile& profile,
                       std::int64_t& next_task_id)
    {
        const double end = t0 + dt;
        int generated = 0;
        while (arrivals.next_arrival_s() < end)
        {
            const double at = arrivals.pop();
            TaskInstance task;
            task.task_id = static_cast<int>(next_task_id++);
            task.origin_node = node.node_id;
            task.created_at_s = at;
            task.available_at_s = at;
            task.visited_nodes = {node.node_id};
            node.total_load_gflops += remaining_gflops(task, profile);
            node.queue.push_back(std::move(task));
            ++node.tasks_created;
            ++generated;
        }
        return generated;
    }

    ComputeOutcome advance_compute(NodeState& node, double t0, double dt, const ModelProfile& profile,
                                   double joules_per_gflop)
    {
        ComputeOutcome out;
        const double end = t0 + dt;
        const double rate = node.capability_gflops;
        double cursor = t0;

        auto credit = [&](TaskInstance& task, double work) {
            task.processed_gflops += work;
            node.processed_gflops += work;
            node.compute_energy_j += work * joules_per_gflop;
            node.energy_consumed_j += work * joules_per_gflop;
            node.total_load_gflops -= work;
            out.gflops += work;
        };

        auto finish = [&](TaskInstance& task) {
            task.completed_at_s = cursor;
            task.completion_accuracy = profile.accuracy(task.committed_exit.value_or(ExitLabel::Full));
            out.completed.push_back(std::move(task));
            node.queue.pop_front();
            ++node.tasks_completed;
        };

        while (!node.queue.empty())
        {
            TaskInstance& task = node.queue.front();
            cursor = std::max(cursor, task.available_at_s);
            if (cursor >= end)
            {
                break;
            }

            // Early-exit binding happens on reaching an exit boundary with no
            // in-layer progress, under the processing node's current label.
            if (!task.committed_exit && task.in_layer_progress_gflops == 0.0 && node.exit.label != ExitLabel::Full &&
                task.next_layer == profile.exit_layer(node.exit.label))
            {
                const double before = remaining_gflops(task, profile);
                task.committed_exit = node.exit.label;
                node.total_load_gflops -= before - remaining_gflops(task, profile);
                out.commits.push_back({task.task_id, node.exit.label, cursor});
            }

            if (task.next_layer >= path_layers(task, profile))
            {
                finish(task);
                continue;
            }

            const double left = layer_cost(task, profile, task.next_layer) - task.in_layer_progress_gflops;
            const double span = end - cursor;
            const double need = left / rate;
            if (need <= span || left - rate * span <= kWorkEpsilonGflops)
            {
                credit(task, left);
                cursor = std::min(cursor + need, end);
                task.in_layer_progress_gflops = 0.0;
                ++task.next_layer;
                if (task.next_layer >= path_layers(task, profile))
                {
                    finish(task);
                }
            }
            else
            {
                const double work = rate * span;
                credit(task, work);
                task.in_layer_progress_gflops += work;
                cursor = end;
            }
        }
        return out;
    }

    InFlightTransfer start_transfer(NodeState& from, int to_node, const LinkBudget& link, double now_s,
                                    const ModelProfile& profile, double tx_power_w)
    {
        if (!link.connected || from.queue.empty())
        {
            throw DisconnectedLink();
        }
        InFlightTransfer x;
        x.task = std::move(from.queue.front());
        from.queue.pop_front();
        from.total_load_gflops -= remaining_gflops(x.task, profile);

        x.task.discarded_gflops += x.task.in_layer_progress_gflops;
        x.task.in_layer_progress_gflops = 0.0;

        x.from_node = from.node_id;
        x.to_node = to_node;
        x.payload_bits = handoff_bits(x.task, profile);
        x.capacity_bps = link.capacity_bps;
        x.remaining_bits = x.payload_bits;
        x.started_at_s = now_s;
        x.tx_energy_j = tx_delay_s(x.payload_bits, link) * tx_power_w;

        from.tx_energy_j += x.tx_energy_j;
        from.energy_consumed_j += x.tx_energy_j;
        from.transmitting = true;
        return x;
    }

    TransferStatus advance_transfer(InFlightTransfer& x, double t0, double dt, bool link_connected) noexcept
    {
        const double end = t0 + dt;
        if (x.delivery_time_s() <= end)
        {
            x.remaining_bits = 0.0;
            return TransferStatus::Delivered;
        }
        if (!link_connected)
        {
            return TransferStatus::Aborted;
        }
        x.remaining_bits = std::max(0.0, x.payload_bits - x.capacity_bps * (end - x.started_at_s));
        return TransferStatus::InProgress;
    }

    Simulation::Simulation(ValidatedConfig config, std::uint64_t seed)
        : config_(std::move(config)), seed_(seed), channel_(ChannelParams::from(config_.get())),
          tx_power_w_(dbm_to_watts(config_->tx_power_dbm)), reference_payload_bits_(config_->model.mean_output_bits())
    {
        const SimConfig& c = config_.get();
        CounterRng placement(seed_, Subsystem::Placement);
        const auto trajectories = place_nodes(c, placement);

        nodes_.resize(static_cast<std::size_t>(c.worker_count));
        arrivals_.reserve(nodes_.size());
        strategy_rng_.reserve(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i)
        {
            NodeState& node = nodes_[i];
            node.node_id = static_cast<int>(i);
            node.trajectory = trajectories[i];
            CounterRng capability(seed_, Subsystem::Capability, i);
            node.capability_gflops = sample_capability(capability, c.capability_mean_gflops, c.capability_std_gflops);
            node.phi_gflops = phi_init(node.capability_gflops);
            arrivals_.emplace_back(CounterRng(seed_, Subsystem::Arrivals, i), c.arrival_process, c.task_arrival_mean_s);
            strategy_rng_.emplace_back(seed_, Subsystem::Strategy, i);
        }
    }

    double Simulation::time_at(std::int64_t step) const noexcept
    {
        return static_cast<double>(step) * config_->sim_step_s;
    }

    double Simulation::now_s() const noexcept
    {
        return time_at(step_);
    }

    void Simulation::record(const TraceEvent& event)
    {
        if (config_->record_trace)
        {
            trace_.push_back(event);
        }
    }

    void Simulation::complete(NodeState& node, TaskInstance& task)
    {
        ++completed_;
        const double latency = *task.completed_at_s - task.created_at_s;
        latency_sum_ += latency;
        ++completed_by_exit_[static_cast<std::size_t>(task.committed_exit.value_or(ExitLabel::Full))];

        TraceEvent e;
        e.kind = TraceEvent::Kind::TaskCompleted;
        e.time_s = *task.completed_at_s;
        e.task_id = task.task_id;
        e.node = node.node_id;
        e.peer = task.origin_node;
        e.latency_s = latency;
        e.accuracy = *task.completion_accuracy;
        e.processed_gflops = task.processed_gflops;
        e.required_gflops = required_gflops(task, config_->model);
        e.discarded_gflops = task.discarded_gflops;
        e.label = task.committed_exit.value_or(ExitLabel::Full);
        record(e);
    }

    void Simulation::decision_epoch(double t)
    {
        const SimConfig& c = config_.get();
        const std::size_t n = nodes_.size();

        std::vector<GeoPosition> positions(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            positions[i] = position_at(nodes_[i].trajectory, t);
        }
        links_ = link_matrix(positions, channel_);
        adjacency_ = adjacency_from(links_, n);

        // Advertisements as of this epoch; every update below reads these.
        std::vector<double> adv_phi(n);
        std::vector<double> adv_load(n);
        std::vector<double> adv_util(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            adv_phi[i] = nodes_[i].phi_gflops;
            adv_load[i] = nodes_[i].total_load_gflops;
            adv_util[i] = utilization(adv_load[i], adv_phi[i]);
        }

        std::vector<NeighborAdvert> adverts;
        for (std::size_t i = 0; i < n; ++i)
        {
            adverts.clear();
            for (int k : adjacency_[i])
            {
                const auto ku = static_cast<std::size_t>(k);
                adverts.push_back({adv_phi[ku], reference_payload_bits_ / links_[i * n + ku].capacity_bps});
            }
            nodes_[i].phi_gflops = phi_update(nodes_[i].capability_gflops, adverts);
        }

        EpochSample sample;
        sample.time_s = t;
        for (NodeState& node : nodes_)
        {
            node.exit.update(node.total_load_gflops, node.prev_total_load_gflops, c.decision_period_s, c);
            node.prev_total_load_gflops = node.total_load_gflops;
            sample.mean_load_gflops += node.total_load_gflops;
            sample.mean_phi_gflops += node.phi_gflops;
            sample.nodes_l1 += node.exit.label == ExitLabel::L1 ? 1 : 0;
            sample.nodes_l2 += node.exit.label == ExitLabel::L2 ? 1 : 0;
        }
        sample.mean_load_gflops /= static_cast<double>(n);
        sample.mean_phi_gflops /= static_cast<double>(n);
        sample.transfers_in_flight = static_cast<int>(transfers_.size());
        remaining_sum_ += sample.mean_load_gflops;
        ++epochs_;
        if (c.record_trace)
        {
            timeline_.push_back(sample);
        }

        std::vector<NeighborLoad> neighbors;
        for (std::size_t i = 0; i < n; ++i)
        {
            NodeState& node = nodes_[i];
            if (node.queue.empty() || node.transmitting)
            {
                continue;
            }
            neighbors.clear();
            for (int k : adjacency_[i])
            {
                const auto ku = static_cast<std::size_t>(k);
                neighbors.push_back({k, adv_util[ku], adv_load[ku]});
            }
            const TaskInstance& head = node.queue.front();
            const NodeView view{node.node_id,
                                utilization(node.total_load_gflops, node.phi_gflops),
                                node.total_load_gflops,
                                neighbors,
                                head.task_id,
                                head.visited_nodes};
            const AllocationDecision decision =
                strategy_decide(c.strategy, view, c.strategy_probabilities, c.gamma_threshold, strategy_rng_[i]);
            if (!decision.is_transfer())
            {
                continue;
            }

            const auto target = static_cast<std::size_t>(decision.target_node);
            InFlightTransfer x = start_transfer(node, decision.target_node, links_[i * n + target], t, c.model, tx_power_w_);
            ++transfers_started_;

            TraceEvent e;
            e.kind = TraceEvent::Kind::TransferStarted;
            e.time_s = t;
            e.task_id = x.task.task_id;
            e.node = x.from_node;
            e.peer = x.to_node;
            e.payload_bits = x.payload_bits;
            e.capacity_bps = x.capacity_bps;
            e.energy_j = x.tx_energy_j;
            e.discarded_gflops = x.task.discarded_gflops;
            record(e);

            transfers_.push_back(std::move(x));
        }
    }

    void Simulation::step()
    {
        if (finished())
        {
            return;
        }
        const SimConfig& c = config_.get();
        const double t0 = time_at(step_);
        const double dt = c.sim_step_s;
        const double end = t0 + dt;

        if (step_ % config_.steps_per_epoch() == 0)
        {
            decision_epoch(t0);
        }

        for (std::size_t i = 0; i < nodes_.size(); ++i)
        {
            created_ += generate_tasks(nodes_[i], arrivals_[i], t0, dt, c.model, next_task_id_);
        }

        std::size_t kept = 0;
        for (std::size_t idx = 0; idx < transfers_.size(); ++idx)
        {
            InFlightTransfer& x = transfers_[idx];
            NodeState& from = nodes_[static_cast<std::size_t>(x.from_node)];
            NodeState& to = nodes_[static_cast<std::size_t>(x.to_node)];
            bool connected = true;
            if (x.delivery_time_s() > end)
            {
                connected = link_budget(position_at(from.trajectory, end), position_at(to.trajectory, end), channel_)
                                .connected;
            }
            const TransferStatus status = advance_transfer(x, t0, dt, connected);
            if (status == TransferStatus::InProgress)
            {
                if (kept != idx)
                {
                    transfers_[kept] = std::move(x);
                }
                ++kept;
                continue;
            }

            from.transmitting = false;
            TraceEvent e;
            e.task_id = x.task.task_id;
            e.node = x.from_node;
            e.peer = x.to_node;
            e.payload_bits = x.payload_bits;
            e.capacity_bps = x.capacity_bps;
            if (status == TransferStatus::Delivered)
            {
                const double at = x.delivery_time_s();
                ++transfers_delivered_;
                transfer_time_sum_ += at - x.started_at_s;
                x.task.mark_visited(x.to_node);
                x.task.available_at_s = at;
                ++x.task.hops;
                to.total_load_gflops += remaining_gflops(x.task, c.model);
                to.queue.push_back(std::move(x.task));
                e.kind = TraceEvent::Kind::TransferDelivered;
                e.time_s = at;
            }
            else
            {
                ++transfers_aborted_;
                x.task.available_at_s = end;
                from.total_load_gflops += remaining_gflops(x.task, c.model);
                from.queue.push_back(std::move(x.task));
                e.kind = TraceEvent::Kind::TransferAborted;
                e.time_s = end;
            }
            record(e);
        }
        transfers_.erase(transfers_.begin() + static_cast<std::ptrdiff_t>(kept), transfers_.end());

        for (NodeState& node : nodes_)
        {
            ComputeOutcome out = advance_compute(node, t0, dt, c.model, c.energy_per_gflop_j);
            for (const auto& commit : out.commits)
            {
                TraceEvent e;
                e.kind = TraceEvent::Kind::ExitCommitted;
                e.time_s = commit.time_s;
                e.task_id = commit.task_id;
                e.node = node.node_id;
                e.label = commit.label;
                record(e);
            }
            for (TaskInstance& task : out.completed)
            {
                complete(node, task);
            }
        }

        ++step_;
    }

    void Simulation::run()
    {
        while (!finished())
        {
            step();
        }
    }

    RunResult Simulation::result() const
    {
        const SimConfig& c = config_.get();
        RunResult r;
        r.seed = seed_;
        r.strategy = c.strategy;
        r.early_exit = c.early_exit;
        r.worker_count = c.worker_count;
        r.sim_time_s = now_s();
        r.tasks_created = created_;
        r.completed_tasks = completed_;
        r.tasks_in_flight = static_cast<std::int64_t>(transfers_.size());
        r.transfers_started = transfers_started_;
        r.transfers_delivered = transfers_delivered_;
        r.transfers_aborted = transfers_aborted_;

        std::vector<double> normalized_work;
        normalized_work.reserve(nodes_.size());
        bool any_work = false;
        for (const NodeState& node : nodes_)
        {
            r.tasks_queued += static_cast<std::int64_t>(node.queue.size());
            r.total_energy_j += node.energy_consumed_j;
            r.compute_energy_j += node.compute_energy_j;
            r.tx_energy_j += node.tx_energy_j;
            r.total_processed_gflops += node.processed_gflops;
            normalized_work.push_back(node.processed_gflops / node.capability_gflops);
            any_work = any_work || node.processed_gflops > 0.0;
            r.nodes.push_back(NodeSummary{node.node_id, node.capability_gflops, node.processed_gflops,
                                          node.energy_consumed_j, node.compute_energy_j, node.tx_energy_j,
                                          node.tasks_created, node.tasks_completed,
                                          static_cast<std::int64_t>(node.queue.size())});
        }

        r.tasks_per_s = r.sim_time_s > 0.0 ? static_cast<double>(completed_) / r.sim_time_s : 0.0;
        r.mean_remaining_gflops = epochs_ > 0 ? remaining_sum_ / static_cast<double>(epochs_) : 0.0;
        if (any_work)
        {
            r.jain_fairness = jain_fairness(normalized_work);
        }
        if (transfers_delivered_ > 0)
        {
            r.mean_transfer_time_s = transfer_time_sum_ / static_cast<double>(transfers_delivered_);
        }
        if (completed_ > 0)
        {
            const auto count = static_cast<double>(completed_);
            r.mean_latency_s = latency_sum_ / count;
            // Fractions times per-exit accuracy, so a run without early exits
            // reports the full-model accuracy exactly.
            double accuracy = 0.0;
            for (auto label : {ExitLabel::Full, ExitLabel::L1, ExitLabel::L2})
            {
                const auto n = completed_by_exit_[static_cast<std::size_t>(label)];
                if (n > 0)
                {
                    accuracy += static_cast<double>(n) / count * c.model.accuracy(label);
                }
            }
            r.mean_accuracy = accuracy;
            r.energy_per_task_j = r.total_energy_j / count;
            if (*r.energy_per_task_j > 0.0 && *r.mean_latency_s > 0.0)
            {
                r.fom = figure_of_merit(r.tasks_per_s, *r.mean_accuracy, *r.energy_per_task_j, *r.mean_latency_s);
            }
        }
        r.timeline = timeline_;
        r.trace = trace_;
        return r;
    }

    RunResult run_simulation(const ValidatedConfig& config, StrategyKind strategy, bool early_exit, std::uint64_t seed)
    {
        SimConfig c = config.get();
        c.strategy = strategy;
        c.early_exit = early_exit;
        c.seed = seed;
        Simulation sim(validate_config(std::move(c)), seed);
        sim.run();
        return sim.result();
    }

    RunResult run_simulation(const ValidatedConfig& config)
    {
        Simulation sim(config, config->seed);
        sim.run();
        return sim.result();
    }
}
