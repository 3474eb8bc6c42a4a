// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fairloop {

/// Per-group view of one simulation step: decision counts for the step's
/// batch plus a summary of the underlying population.
struct GroupStats {
    std::string label;
    std::int64_t population = 0;      // individuals currently in the group
    double mean_feature = 0.0;        // e.g. mean credit score of the population
    std::int64_t selected = 0;        // positive decisions in this step's batch
    std::int64_t total = 0;           // batch size for this group
    std::int64_t positives = 0;       // ground-truth positives in the batch
    std::int64_t true_positives = 0;  // selected and ground-truth positive
};

/// Everything recorded about one time-step.
struct Snapshot {
    int step = 0;  // 1-based
    std::vector<GroupStats> groups;
    std::vector<double> district_scores;  // per-district allocation scores, empty when unused
    std::vector<double> step_utilities;   // one slot per case-study utility definition
};

/// One simulated evolution: k contiguous snapshots for a configuration/run.
struct Trace {
    std::uint64_t config_id = 0;
    int run_index = 0;
    std::vector<Snapshot> snapshots;
};

}  // namespace fairloop
