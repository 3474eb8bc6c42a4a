// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fairloop {

enum class Direction { Minimize, Maximize };

/// One objective of the trade-off analysis: a campaign metric id and whether
/// lower (unfairness) or higher (utility) is better.
struct ObjectiveSpec {
    std::string metric_id;
    Direction direction = Direction::Minimize;

    bool operator==(const ObjectiveSpec&) const = default;
};

struct ParetoPoint {
    std::uint64_t config_id = 0;
    std::vector<double> objectives;
};

struct ParetoFront {
    std::vector<ObjectiveSpec> specs;
    std::vector<ParetoPoint> members;          // non-dominated points
    std::vector<std::uint64_t> excluded;       // points with non-finite objectives
    std::vector<double> scale_min;             // per objective, over front members
    std::vector<double> scale_max;
};

/// Extracts the non-dominated points. A point dominates another when it is
/// no worse in every objective (per direction) and strictly better in at
/// least one; identical vectors are all retained. Points with non-finite
/// entries are excluded and reported.
ParetoFront pareto_front(const std::vector<ParetoPoint>& points,
                         const std::vector<ObjectiveSpec>& specs);

/// Per-objective affine rescaling of the front to [0, 1] with higher =
/// better (Minimize objectives are inverted). A constant objective maps to
/// 1.0 everywhere.
std::vector<std::vector<double>> normalize_for_radar(const ParetoFront& front);

}  // namespace fairloop
