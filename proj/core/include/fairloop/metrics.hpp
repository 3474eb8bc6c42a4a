// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fairloop/trace.hpp"

namespace fairloop {

/// A per-snapshot unfairness criterion F. All shipped criteria return values
/// in [0, 1] except avg_pairwise_rpd, which ranges over [0, 2].
using SnapshotCriterion = std::function<double(const Snapshot&)>;

/// Absolute gap in positive-decision rates between the two groups of the
/// step's batch.
double demographic_parity(const Snapshot& s);

/// Absolute gap in true-positive rates between the two groups.
double equal_opportunity(const Snapshot& s);

/// Absolute gap of the groups' population mean feature (e.g. credit score).
double mean_gap(const Snapshot& s);

/// Mean over unordered pairs of |x-y| / ((x+y)/2); a pair of two zeros
/// contributes 0.
double avg_pairwise_rpd(const std::vector<double>& scores);

enum class LongTermMode { AvgInc, MaxInc };

/// A trace-level criterion: a per-snapshot F combined with the increase mode.
struct LongTermMetric {
    std::string id;  // e.g. "max_inc_dp"
    SnapshotCriterion criterion;
    LongTermMode mode = LongTermMode::MaxInc;

    double operator()(const Trace& t) const;
};

/// Mean F over the trace minus F at the initial step.
double avg_inc(const Trace& t, const SnapshotCriterion& criterion);

/// Peak F over the trace minus F at the initial step; never negative.
double max_inc(const Trace& t, const SnapshotCriterion& criterion);

struct RunStatistics {
    std::size_t runs = 0;
    double mean = 0.0;
    double std_dev = 0.0;  // sample standard deviation (divisor m-1), 0 when m == 1
};

RunStatistics statistics_of(const std::vector<double>& values);

/// Applies a trace-level metric across a set of runs and summarizes.
RunStatistics trace_statistic_over_runs(const std::vector<Trace>& traces, const LongTermMetric& lf);

/// Looks up one of the registered per-snapshot criteria: "dp", "eo",
/// "mean_gap", "rpd". Throws std::invalid_argument for unknown ids.
SnapshotCriterion criterion_by_id(const std::string& id);

/// Builds "<mode>_<criterion>" long-term metrics, e.g. ("dp", "max_inc").
LongTermMetric make_long_term_metric(const std::string& criterion_id, const std::string& mode_id);

}  // namespace fairloop
