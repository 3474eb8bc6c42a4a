// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include "fairloop/sim.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace fairloop {

namespace {

// Merges the environment's population summary with the step's decision
// counts. Group indices of batch units refer to the summary order.
std::vector<GroupStats> build_group_stats(const EnvironmentModel& env, const InputBatch& batch,
                                          const Decisions& decisions) {
    std::vector<GroupStats> groups = env.summarize();
    for (std::size_t i = 0; i < batch.units.size(); ++i) {
        const auto& unit = batch.units[i];
        if (unit.group < 0 || unit.group >= static_cast<int>(groups.size())) {
            throw std::runtime_error("batch unit references unknown group");
        }
        auto& g = groups[static_cast<std::size_t>(unit.group)];
        g.total += 1;
        const bool selected = decisions.selected[i] != 0;
        g.selected += selected ? 1 : 0;
        g.positives += unit.outcome ? 1 : 0;
        g.true_positives += (selected && unit.outcome) ? 1 : 0;
    }
    return groups;
}

}  // namespace

Trace simulate_trace(EnvironmentModel& env, SystemAgent& agent, std::uint64_t config_id,
                     int run_index, int horizon, RngStream& rng) {
    if (horizon < 1) {
        throw std::invalid_argument("horizon must be at least 1");
    }
    Trace trace;
    trace.config_id = config_id;
    trace.run_index = run_index;
    trace.snapshots.reserve(static_cast<std::size_t>(horizon));

    env.init(rng);
    for (int step = 1; step <= horizon; ++step) {
        InputBatch batch = env.project(rng);
        if (batch.units.empty()) {
            throw std::runtime_error("degenerate population");
        }
        agent.refit(batch);
        const Outputs outputs = agent.predict(batch);
        const Decisions decisions = agent.decide(batch, outputs);
        if (decisions.selected.size() != batch.units.size()) {
            throw std::runtime_error("decision count does not match batch size");
        }
        Snapshot snapshot;
        snapshot.step = step;
        snapshot.groups = build_group_stats(env, batch, decisions);
        StepEffects effects = env.observe(batch, decisions, rng);
        snapshot.step_utilities = std::move(effects.step_utilities);
        snapshot.district_scores = std::move(effects.district_scores);
        trace.snapshots.push_back(std::move(snapshot));
        if (step < horizon) {
            env.shift(rng);
        }
    }
    return trace;
}

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::Relative: return "relative";
        case StopReason::Absolute: return "absolute";
        case StopReason::MaxRuns: return "max_runs";
    }
    return "unknown";
}

TraceSet run_monte_carlo(const EnvironmentFactory& make_env, const AgentFactory& make_agent,
                         const Configuration& config, int horizon, const LongTermMetric& lf,
                         std::uint64_t global_seed, const MonteCarloLimits& limits) {
    if (limits.min_runs < 2 || limits.max_runs < limits.min_runs) {
        throw std::invalid_argument("invalid run limits");
    }
    if (limits.z <= 0.0 || limits.rel_tol <= 0.0) {
        throw std::invalid_argument("invalid stopping parameters");
    }

    TraceSet result;
    for (int run = 0; run < limits.max_runs; ++run) {
        RngStream rng = derive_stream(global_seed, config.id, static_cast<std::uint64_t>(run));
        auto env = make_env(config);
        auto agent = make_agent(config);
        Trace trace = simulate_trace(*env, *agent, config.id, run, horizon, rng);
        result.lf_values.push_back(lf(trace));
        result.traces.push_back(std::move(trace));

        const int m = run + 1;
        if (m < limits.min_runs) {
            continue;
        }
        result.stats = statistics_of(result.lf_values);
        const double root_m = std::sqrt(static_cast<double>(m));
        const double abs_half_width = limits.z * result.stats.std_dev / root_m;
        if (result.stats.mean != 0.0 &&
            abs_half_width / std::abs(result.stats.mean) < limits.rel_tol) {
            result.stop_reason = StopReason::Relative;
            return result;
        }
        if (abs_half_width < limits.abs_floor) {
            result.stop_reason = StopReason::Absolute;
            return result;
        }
    }
    result.stats = statistics_of(result.lf_values);
    result.stop_reason = StopReason::MaxRuns;
    return result;
}

CampaignResult run_campaign(const std::vector<Configuration>& configs,
                            const EnvironmentFactory& make_env, const AgentFactory& make_agent,
                            const LongTermMetric& lf, const std::vector<CampaignMetric>& metrics,
                            const CampaignOptions& options, const TraceSink& sink) {
    if (configs.empty()) {
        throw std::invalid_argument("no configurations to simulate");
    }

    CampaignResult result;
    result.outcomes.resize(configs.size());

    auto process = [&](std::size_t index) {
        const Configuration& config = configs[index];
        ConfigOutcome& outcome = result.outcomes[index];
        outcome.config_id = config.id;
        outcome.assignments = config.assignments;
        try {
            TraceSet set = run_monte_carlo(make_env, make_agent, config, options.horizon, lf,
                                           options.global_seed, options.limits);
            outcome.runs = set.traces.size();
            outcome.stop_reason = set.stop_reason;
            outcome.lf_values = set.lf_values;
            outcome.metric_stats[lf.id] = set.stats;
            for (const auto& metric : metrics) {
                if (metric.id == lf.id) {
                    continue;
                }
                std::vector<double> values;
                values.reserve(set.traces.size());
                for (const auto& trace : set.traces) {
                    values.push_back(metric.eval(trace));
                }
                outcome.metric_stats[metric.id] = statistics_of(values);
            }
            if (sink) {
                sink(index, config, set);
            }
        } catch (const std::exception& e) {
            outcome.error = std::string(e.what());
        }
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1 || configs.size() == 1) {
        for (std::size_t i = 0; i < configs.size(); ++i) {
            process(i);
        }
        return result;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const std::size_t worker_count =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), configs.size());
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t index = next.fetch_add(1);
                if (index >= configs.size()) {
                    return;
                }
                process(index);
            }
        });
    }
    for (auto& worker : workers) {
        worker.join();
    }
    return result;
}

}  // namespace fairloop
