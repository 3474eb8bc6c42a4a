// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "fairloop/param_space.hpp"

namespace fairloop {

/// A g-way value combination absent from a configuration set.
struct MissingTuple {
    std::vector<int> param_indices;  // strictly increasing
    std::vector<int> value_indices;  // parallel to param_indices
};

/// Greedy one-row-at-a-time covering array of strength g. Every g-way value
/// combination of the space appears in at least one returned configuration.
/// Deterministic for a fixed seed; never larger than the full enumeration.
std::vector<Configuration> sample_covering_array(const ConfigSpace& space, int strength,
                                                 std::uint64_t seed);

/// Lists every g-way combination not covered by `configs` (empty when the set
/// is a valid strength-g covering array). Each missing tuple appears once, in
/// lexicographic (parameter subset, value combination) order.
std::vector<MissingTuple> verify_coverage(const std::vector<Configuration>& configs,
                                          const ConfigSpace& space, int strength);

}  // namespace fairloop
