// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include "fairloop/covering.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fairloop/rng.hpp"

namespace fairloop {

namespace {

constexpr int kCandidatesPerRow = 50;

// Coverage bookkeeping for all C(n,g) parameter subsets. Each subset owns a
// flat bitmap over the mixed-radix product of its parameters' value counts.
class CoverageTracker {
  public:
    CoverageTracker(const ConfigSpace& space, int g) : space_(space) {
        const int n = static_cast<int>(space.parameter_count());
        std::vector<int> subset(g);
        build_subsets(subset, 0, 0, n, g);
        covered_.resize(subsets_.size());
        for (std::size_t s = 0; s < subsets_.size(); ++s) {
            std::size_t combos = 1;
            for (int p : subsets_[s]) {
                combos *= space.parameters()[p].values.size();
            }
            covered_[s].assign(combos, false);
            uncovered_ += combos;
        }
    }

    std::size_t uncovered() const { return uncovered_; }
    const std::vector<std::vector<int>>& subsets() const { return subsets_; }

    std::size_t combo_index(std::size_t subset, const std::vector<int>& row) const {
        std::size_t idx = 0;
        for (int p : subsets_[subset]) {
            idx = idx * space_.parameters()[p].values.size() + static_cast<std::size_t>(row[p]);
        }
        return idx;
    }

    bool is_covered(std::size_t subset, std::size_t combo) const { return covered_[subset][combo]; }

    void mark_row(const std::vector<int>& row) {
        for (std::size_t s = 0; s < subsets_.size(); ++s) {
            auto idx = combo_index(s, row);
            if (!covered_[s][idx]) {
                covered_[s][idx] = true;
                --uncovered_;
            }
        }
    }

    std::size_t count_new(const std::vector<int>& row) const {
        std::size_t count = 0;
        for (std::size_t s = 0; s < subsets_.size(); ++s) {
            if (!covered_[s][combo_index(s, row)]) {
                ++count;
            }
        }
        return count;
    }

    // First uncovered tuple in (subset, combo) order.
    MissingTuple first_uncovered() const {
        for (std::size_t s = 0; s < subsets_.size(); ++s) {
            for (std::size_t c = 0; c < covered_[s].size(); ++c) {
                if (!covered_[s][c]) {
                    return decode(s, c);
                }
            }
        }
        throw std::logic_error("no uncovered tuple left");
    }

    MissingTuple decode(std::size_t subset, std::size_t combo) const {
        MissingTuple t;
        t.param_indices = subsets_[subset];
        t.value_indices.assign(t.param_indices.size(), 0);
        for (std::size_t i = t.param_indices.size(); i-- > 0;) {
            const auto count = space_.parameters()[t.param_indices[i]].values.size();
            t.value_indices[i] = static_cast<int>(combo % count);
            combo /= count;
        }
        return t;
    }

  private:
    void build_subsets(std::vector<int>& subset, int pos, int start, int n, int g) {
        if (pos == g) {
            subsets_.push_back(subset);
            return;
        }
        for (int p = start; p <= n - (g - pos); ++p) {
            subset[static_cast<std::size_t>(pos)] = p;
            build_subsets(subset, pos + 1, p + 1, n, g);
        }
    }

    const ConfigSpace& space_;
    std::vector<std::vector<int>> subsets_;
    std::vector<std::vector<bool>> covered_;
    std::size_t uncovered_ = 0;
};

// Builds one candidate row: the forced tuple is preassigned, the remaining
// parameters are filled greedily in a random order, each taking the value
// that completes the most still-uncovered tuples (random tie-break).
std::vector<int> build_candidate(const ConfigSpace& space, const CoverageTracker& tracker,
                                 const MissingTuple& forced, RngStream& rng) {
    const int n = static_cast<int>(space.parameter_count());
    std::vector<int> row(n, -1);
    for (std::size_t i = 0; i < forced.param_indices.size(); ++i) {
        row[forced.param_indices[i]] = forced.value_indices[i];
    }

    std::vector<int> order;
    for (int p = 0; p < n; ++p) {
        if (row[p] < 0) {
            order.push_back(p);
        }
    }
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.next_below(i)]);
    }

    std::vector<int> best_values;
    for (int p : order) {
        const auto value_count = static_cast<int>(space.parameters()[p].values.size());
        std::size_t best_gain = 0;
        best_values.clear();
        for (int v = 0; v < value_count; ++v) {
            row[p] = v;
            std::size_t gain = 0;
            for (std::size_t s = 0; s < tracker.subsets().size(); ++s) {
                bool complete = true;
                for (int q : tracker.subsets()[s]) {
                    if (row[q] < 0) {
                        complete = false;
                        break;
                    }
                }
                if (complete && !tracker.is_covered(s, tracker.combo_index(s, row))) {
                    ++gain;
                }
            }
            if (best_values.empty() || gain > best_gain) {
                best_gain = gain;
                best_values.assign(1, v);
            } else if (gain == best_gain) {
                best_values.push_back(v);
            }
        }
        row[p] = best_values[rng.next_below(best_values.size())];
    }
    return row;
}

}  // namespace

std::vector<Configuration> sample_covering_array(const ConfigSpace& space, int strength,
                                                 std::uint64_t seed) {
    const int n = static_cast<int>(space.parameter_count());
    if (strength < 2 || strength > n) {
        throw std::invalid_argument("covering strength out of range");
    }
    // Saturation: every full assignment is itself a g-tuple.
    if (strength == n) {
        return enumerate_configs(space);
    }

    const std::uint64_t full_size = space.total_configurations();
    RngStream rng = derive_stream(seed, 0, 0);
    CoverageTracker tracker(space, strength);

    std::vector<std::vector<int>> rows;
    while (tracker.uncovered() > 0 && rows.size() < full_size) {
        const MissingTuple forced = tracker.first_uncovered();
        std::vector<int> best_row;
        std::size_t best_gain = 0;
        for (int c = 0; c < kCandidatesPerRow; ++c) {
            std::vector<int> candidate = build_candidate(space, tracker, forced, rng);
            const std::size_t gain = tracker.count_new(candidate);
            if (best_row.empty() || gain > best_gain ||
                (gain == best_gain && candidate < best_row)) {
                best_gain = gain;
                best_row = std::move(candidate);
            }
        }
        tracker.mark_row(best_row);
        rows.push_back(std::move(best_row));
    }

    if (tracker.uncovered() > 0) {
        return enumerate_configs(space);  // greedy degenerated; full set always covers
    }

    std::vector<Configuration> configs;
    configs.reserve(rows.size());
    for (auto& row : rows) {
        const std::uint64_t id = config_id_from_assignments(space, row);
        configs.push_back(Configuration{id, std::move(row)});
    }
    return configs;
}

std::vector<MissingTuple> verify_coverage(const std::vector<Configuration>& configs,
                                          const ConfigSpace& space, int strength) {
    const int n = static_cast<int>(space.parameter_count());
    if (strength < 1 || strength > n) {
        throw std::invalid_argument("covering strength out of range");
    }
    CoverageTracker tracker(space, strength);
    for (const auto& config : configs) {
        if (config.assignments.size() != space.parameter_count()) {
            throw std::invalid_argument("configuration does not belong to the space");
        }
        tracker.mark_row(config.assignments);
    }
    std::vector<MissingTuple> missing;
    for (std::size_t s = 0; s < tracker.subsets().size(); ++s) {
        std::size_t combos = 1;
        for (int p : tracker.subsets()[s]) {
            combos *= space.parameters()[p].values.size();
        }
        for (std::size_t c = 0; c < combos; ++c) {
            if (!tracker.is_covered(s, c)) {
                missing.push_back(tracker.decode(s, c));
            }
        }
    }
    return missing;
}

}  // namespace fairloop
