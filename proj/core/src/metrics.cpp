// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include "fairloop/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fairloop {

namespace {

void require_two_groups(const Snapshot& s) {
    if (s.groups.size() != 2) {
        throw std::invalid_argument("criterion requires exactly two groups, snapshot has " +
                                    std::to_string(s.groups.size()));
    }
}

}  // namespace

double demographic_parity(const Snapshot& s) {
    require_two_groups(s);
    const auto& a = s.groups[0];
    const auto& b = s.groups[1];
    if (a.total <= 0 || b.total <= 0) {
        throw std::invalid_argument("empty group");
    }
    const double rate_a = static_cast<double>(a.selected) / static_cast<double>(a.total);
    const double rate_b = static_cast<double>(b.selected) / static_cast<double>(b.total);
    return std::abs(rate_a - rate_b);
}

double equal_opportunity(const Snapshot& s) {
    require_two_groups(s);
    const auto& a = s.groups[0];
    const auto& b = s.groups[1];
    if (a.positives <= 0 || b.positives <= 0) {
        throw std::invalid_argument("no positives in group");
    }
    const double tpr_a = static_cast<double>(a.true_positives) / static_cast<double>(a.positives);
    const double tpr_b = static_cast<double>(b.true_positives) / static_cast<double>(b.positives);
    return std::abs(tpr_a - tpr_b);
}

double mean_gap(const Snapshot& s) {
    require_two_groups(s);
    const auto& a = s.groups[0];
    const auto& b = s.groups[1];
    if (a.population <= 0 || b.population <= 0) {
        throw std::invalid_argument("empty group");
    }
    return std::abs(a.mean_feature - b.mean_feature);
}

double avg_pairwise_rpd(const std::vector<double>& scores) {
    if (scores.size() < 2) {
        throw std::invalid_argument("fewer than 2 districts");
    }
    bool any_nonzero = false;
    for (double x : scores) {
        if (x < 0.0) {
            throw std::invalid_argument("negative district score");
        }
        any_nonzero = any_nonzero || x > 0.0;
    }
    if (!any_nonzero) {
        throw std::invalid_argument("all district scores zero");
    }
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        for (std::size_t j = i + 1; j < scores.size(); ++j) {
            const double mean = (scores[i] + scores[j]) / 2.0;
            sum += mean > 0.0 ? std::abs(scores[i] - scores[j]) / mean : 0.0;
            ++pairs;
        }
    }
    return sum / static_cast<double>(pairs);
}

double avg_inc(const Trace& t, const SnapshotCriterion& criterion) {
    if (t.snapshots.empty()) {
        throw std::invalid_argument("empty trace");
    }
    double sum = 0.0;
    for (const auto& s : t.snapshots) {
        try {
            sum += criterion(s);
        } catch (const std::exception& e) {
            throw std::runtime_error("criterion undefined at step " + std::to_string(s.step) + ": " +
                                     e.what());
        }
    }
    return sum / static_cast<double>(t.snapshots.size()) - criterion(t.snapshots.front());
}

double max_inc(const Trace& t, const SnapshotCriterion& criterion) {
    if (t.snapshots.empty()) {
        throw std::invalid_argument("empty trace");
    }
    double peak = -std::numeric_limits<double>::infinity();
    for (const auto& s : t.snapshots) {
        try {
            peak = std::max(peak, criterion(s));
        } catch (const std::exception& e) {
            throw std::runtime_error("criterion undefined at step " + std::to_string(s.step) + ": " +
                                     e.what());
        }
    }
    return peak - criterion(t.snapshots.front());
}

double LongTermMetric::operator()(const Trace& t) const {
    return mode == LongTermMode::AvgInc ? avg_inc(t, criterion) : max_inc(t, criterion);
}

RunStatistics statistics_of(const std::vector<double>& values) {
    if (values.empty()) {
        throw std::invalid_argument("no values");
    }
    RunStatistics stats;
    stats.runs = values.size();
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    stats.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            const double d = v - stats.mean;
            ss += d * d;
        }
        stats.std_dev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return stats;
}

RunStatistics trace_statistic_over_runs(const std::vector<Trace>& traces, const LongTermMetric& lf) {
    std::vector<double> values;
    values.reserve(traces.size());
    for (const auto& t : traces) {
        values.push_back(lf(t));
    }
    return statistics_of(values);
}

SnapshotCriterion criterion_by_id(const std::string& id) {
    if (id == "dp") {
        return [](const Snapshot& s) { return demographic_parity(s); };
    }
    if (id == "eo") {
        return [](const Snapshot& s) { return equal_opportunity(s); };
    }
    if (id == "mean_gap") {
        return [](const Snapshot& s) { return mean_gap(s); };
    }
    if (id == "rpd") {
        return [](const Snapshot& s) { return avg_pairwise_rpd(s.district_scores); };
    }
    throw std::invalid_argument("unknown criterion id: " + id);
}

LongTermMetric make_long_term_metric(const std::string& criterion_id, const std::string& mode_id) {
    LongTermMode mode;
    if (mode_id == "avg_inc") {
        mode = LongTermMode::AvgInc;
    } else if (mode_id == "max_inc") {
        mode = LongTermMode::MaxInc;
    } else {
        throw std::invalid_argument("unknown long-term mode: " + mode_id);
    }
    return LongTermMetric{mode_id + "_" + criterion_id, criterion_by_id(criterion_id), mode};
}

}  // namespace fairloop
