// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fairloop/metrics.hpp"
#include "fairloop/param_space.hpp"
#include "fairloop/rng.hpp"
#include "fairloop/trace.hpp"

namespace fairloop {

/// One observable unit presented to the system in a step: a loan applicant
/// (group, score, latent repayment outcome) or a grid cell (cell index,
/// current intensity estimate).
struct InputUnit {
    int group = 0;
    double feature = 0.0;
    int cell = -1;
    bool outcome = false;  // latent ground truth; hidden from the predictive model
};

struct InputBatch {
    std::vector<InputUnit> units;
};

/// Model predictions, one score per input unit.
struct Outputs {
    std::vector<double> scores;
};

/// Decisions, one flag per input unit (approved / allocated).
struct Decisions {
    std::vector<std::uint8_t> selected;
};

enum class UtilityAggregation { Sum, Mean };

/// A per-step utility slot and how it aggregates over a trace.
struct UtilityDef {
    std::string id;
    UtilityAggregation aggregation = UtilityAggregation::Sum;
};

/// What one step's decisions did to the world: per-step utility slot values
/// plus (for district-structured cases) the allocation scores.
struct StepEffects {
    std::vector<double> step_utilities;
    std::vector<double> district_scores;
};

/// Behavioral contract for the environment side of the feedback loop. The
/// instance owns the evolving state; one instance serves one simulation run.
class EnvironmentModel {
  public:
    virtual ~EnvironmentModel() = default;

    /// Creates the initial state. Must be called before the first project().
    virtual void init(RngStream& rng) = 0;

    /// Samples the observable input batch from the current state.
    virtual InputBatch project(RngStream& rng) = 0;

    /// Realizes the immediate consequences of the decisions (outcomes,
    /// discoveries, utility contributions) and stages the state transition.
    virtual StepEffects observe(const InputBatch& batch, const Decisions& decisions,
                                RngStream& rng) = 0;

    /// Completes the stochastic state transition staged by observe(). Not
    /// called after the final step of a trace.
    virtual void shift(RngStream& rng) = 0;

    /// Population summary of the current state, one entry per group label.
    virtual std::vector<GroupStats> summarize() const = 0;

    virtual std::vector<std::string> group_labels() const = 0;
    virtual std::vector<UtilityDef> utility_defs() const = 0;
};

/// Behavioral contract for the system side: the predictive model plus the
/// decision maker. decide() must be deterministic given batch and outputs.
class SystemAgent {
  public:
    virtual ~SystemAgent() = default;

    virtual Outputs predict(const InputBatch& batch) = 0;
    virtual Decisions decide(const InputBatch& batch, const Outputs& outputs) = 0;

    /// Optional per-step refit hook. The shipped agents recompute their
    /// thresholds analytically each step instead of retraining a model.
    virtual void refit(const InputBatch& /*batch*/) {}
};

/// Runs the feedback loop for exactly k steps and records the trace. The
/// engine drives project -> predict -> decide -> observe each step, and
/// shift between steps (never after the last one).
Trace simulate_trace(EnvironmentModel& env, SystemAgent& agent, std::uint64_t config_id,
                     int run_index, int horizon, RngStream& rng);

/// Stopping-rule parameters. The defaults implement the 95%-confidence
/// relative half-width rule (z = 1.96, tolerance 0.05) with an absolute
/// half-width guard for near-zero means.
struct MonteCarloLimits {
    int min_runs = 5;
    int max_runs = 50;
    double z = 1.96;
    double rel_tol = 0.05;
    double abs_floor = 0.005;

    bool operator==(const MonteCarloLimits&) const = default;
};

enum class StopReason { Relative, Absolute, MaxRuns };

std::string to_string(StopReason reason);

struct TraceSet {
    std::vector<Trace> traces;
    std::vector<double> lf_values;  // stopping metric, one value per run
    RunStatistics stats;            // statistics of lf_values
    StopReason stop_reason = StopReason::MaxRuns;
};

using EnvironmentFactory = std::function<std::unique_ptr<EnvironmentModel>(const Configuration&)>;
using AgentFactory = std::function<std::unique_ptr<SystemAgent>(const Configuration&)>;

/// Repeats simulate_trace with run indices 0,1,2,... until the half-width
/// criterion of `lf` over the collected traces passes (or max_runs).
TraceSet run_monte_carlo(const EnvironmentFactory& make_env, const AgentFactory& make_agent,
                         const Configuration& config, int horizon, const LongTermMetric& lf,
                         std::uint64_t global_seed, const MonteCarloLimits& limits);

/// Any trace-level metric evaluated per run during a campaign: the stopping
/// LF, further long-term criteria, or a utility aggregate.
struct CampaignMetric {
    std::string id;
    std::function<double(const Trace&)> eval;
};

struct ConfigOutcome {
    std::uint64_t config_id = 0;
    std::vector<int> assignments;
    std::size_t runs = 0;
    StopReason stop_reason = StopReason::MaxRuns;
    std::map<std::string, RunStatistics> metric_stats;
    std::vector<double> lf_values;       // per-run values of the stopping metric
    std::optional<std::string> error;    // set when this configuration failed
};

struct CampaignResult {
    std::vector<ConfigOutcome> outcomes;  // same order as the input configurations
};

/// Called with each configuration's traces as soon as they are complete
/// (possibly from a worker thread); used to persist traces without keeping
/// the whole campaign in memory.
using TraceSink = std::function<void(std::size_t config_index, const Configuration&, const TraceSet&)>;

struct CampaignOptions {
    int horizon = 200;
    MonteCarloLimits limits;
    std::uint64_t global_seed = 0;
    int jobs = 1;
};

/// Simulates every configuration: Monte-Carlo per configuration with `lf`
/// driving the stopping rule and all `metrics` summarized over the recorded
/// runs. Failures are captured per configuration; the campaign continues.
/// Results are identical regardless of the number of worker threads.
CampaignResult run_campaign(const std::vector<Configuration>& configs,
                            const EnvironmentFactory& make_env, const AgentFactory& make_agent,
                            const LongTermMetric& lf, const std::vector<CampaignMetric>& metrics,
                            const CampaignOptions& options, const TraceSink& sink = {});

}  // namespace fairloop
