// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include "fairloop/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fairloop {

namespace {

// true iff a dominates b: no worse everywhere, strictly better somewhere.
bool dominates(const ParetoPoint& a, const ParetoPoint& b, const std::vector<ObjectiveSpec>& specs) {
    bool strictly_better = false;
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const double va = specs[k].direction == Direction::Minimize ? a.objectives[k] : -a.objectives[k];
        const double vb = specs[k].direction == Direction::Minimize ? b.objectives[k] : -b.objectives[k];
        if (va > vb) {
            return false;
        }
        if (va < vb) {
            strictly_better = true;
        }
    }
    return strictly_better;
}

}  // namespace

ParetoFront pareto_front(const std::vector<ParetoPoint>& points,
                         const std::vector<ObjectiveSpec>& specs) {
    if (points.empty()) {
        throw std::invalid_argument("no points");
    }
    if (specs.empty()) {
        throw std::invalid_argument("no objectives");
    }

    ParetoFront front;
    front.specs = specs;

    std::vector<ParetoPoint> valid;
    valid.reserve(points.size());
    for (const auto& point : points) {
        if (point.objectives.size() != specs.size()) {
            throw std::invalid_argument("objective vector length does not match objective count");
        }
        const bool finite = std::all_of(point.objectives.begin(), point.objectives.end(),
                                        [](double v) { return std::isfinite(v); });
        if (finite) {
            valid.push_back(point);
        } else {
            front.excluded.push_back(point.config_id);
        }
    }

    // Configuration counts stay small (<= ~10^3), so the quadratic scan is
    // the algorithm of record.
    for (const auto& candidate : valid) {
        bool dominated = false;
        for (const auto& other : valid) {
            if (dominates(other, candidate, specs)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            front.members.push_back(candidate);
        }
    }

    front.scale_min.assign(specs.size(), std::numeric_limits<double>::infinity());
    front.scale_max.assign(specs.size(), -std::numeric_limits<double>::infinity());
    for (const auto& member : front.members) {
        for (std::size_t k = 0; k < specs.size(); ++k) {
            front.scale_min[k] = std::min(front.scale_min[k], member.objectives[k]);
            front.scale_max[k] = std::max(front.scale_max[k], member.objectives[k]);
        }
    }
    return front;
}

std::vector<std::vector<double>> normalize_for_radar(const ParetoFront& front) {
    if (front.members.empty()) {
        throw std::invalid_argument("empty front");
    }
    std::vector<std::vector<double>> scaled(front.members.size(),
                                            std::vector<double>(front.specs.size(), 1.0));
    for (std::size_t k = 0; k < front.specs.size(); ++k) {
        const double lo = front.scale_min[k];
        const double hi = front.scale_max[k];
        if (hi <= lo) {
            continue;  // constant objective: everyone is equally good
        }
        for (std::size_t i = 0; i < front.members.size(); ++i) {
            const double t = (front.members[i].objectives[k] - lo) / (hi - lo);
            scaled[i][k] = front.specs[k].direction == Direction::Minimize ? 1.0 - t : t;
        }
    }
    return scaled;
}

}  // namespace fairloop
