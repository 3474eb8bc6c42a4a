// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairloop/case_registry.hpp"
#include "fairloop/pareto.hpp"
#include "fairloop/sim.hpp"

namespace fairloop {

struct SamplingSpec {
    enum class Mode { Full, Covering };
    Mode mode = Mode::Full;
    int strength = 2;  // covering strength g, used in Covering mode

    bool operator==(const SamplingSpec&) const = default;
};

/// One requested long-term fairness metric: a per-snapshot criterion id
/// ("dp", "eo", "mean_gap", "rpd") and an increase mode ("avg_inc",
/// "max_inc").
struct MetricSpec {
    std::string criterion;
    std::string mode;

    std::string id() const { return mode + "_" + criterion; }
    bool operator==(const MetricSpec&) const = default;
};

/// A parsed and validated experiment description. The first entry of
/// `metrics` drives the Monte-Carlo stopping rule and is the response of
/// the sensitivity analysis.
struct ExperimentConfig {
    std::string case_study;
    std::vector<ParameterDef> parameters;
    int horizon = 0;
    MonteCarloLimits monte_carlo;
    SamplingSpec sampling;
    std::vector<MetricSpec> metrics;
    std::vector<std::string> utilities;
    std::vector<ObjectiveSpec> objectives;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    bool write_traces = true;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Parses the JSON experiment config. Unknown keys, missing required
/// fields, unregistered ids, and out-of-range numbers are rejected with
/// path-qualified messages.
ExperimentConfig parse_experiment_config(const std::string& text);

/// Inverse of parse_experiment_config: parse(serialize(c)) == c.
std::string serialize_experiment_config(const ExperimentConfig& config);

/// Key-order-independent serialization used for the manifest's config hash;
/// omits the output directory (an execution detail, not experiment identity).
std::string canonical_config_json(const ExperimentConfig& config);

ConfigSpace build_config_space(const ExperimentConfig& config);

/// All metric ids a campaign for this config produces: the long-term
/// metrics followed by the selected utilities.
std::vector<std::string> campaign_metric_ids(const ExperimentConfig& config);

}  // namespace fairloop
