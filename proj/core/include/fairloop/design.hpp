// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "fairloop/param_space.hpp"

namespace fairloop {

enum class TermKind { Main, Interaction };

/// A regression term: one parameter's main effect or a pairwise interaction.
/// Terms group the encoded columns that belong to them (a multi-level
/// categorical parameter contributes one dummy column per non-reference
/// level).
struct TermId {
    TermKind kind = TermKind::Main;
    int param_a = 0;
    int param_b = -1;  // second parameter for interactions

    bool operator==(const TermId& other) const = default;
};

std::string term_name(const TermId& term, const ConfigSpace& space);

/// One encoded column of the design matrix.
struct ColumnInfo {
    TermId term;
    std::string dummy_label;  // categorical level(s), empty for pure numeric columns
};

/// Standardized design matrix with pairwise interactions. Column storage is
/// column-major; every retained column has sample mean 0 and sample standard
/// deviation 1.
struct DesignMatrix {
    std::size_t rows = 0;
    std::vector<ColumnInfo> columns;
    std::vector<std::vector<double>> values;  // values[c][r]
    std::vector<double> response;
    std::vector<std::string> dropped_columns;  // constant columns, with reason
    bool response_constant = false;
};

/// Encodes configurations and their responses per the standardized
/// regression scheme: numeric parameters z-scored (sample std), categorical
/// parameters one-hot with the first-listed level as reference then
/// z-scored, and interaction columns as re-standardized products of the two
/// standardized main columns. Constant columns are dropped and recorded.
DesignMatrix encode_design(const ConfigSpace& space, const std::vector<Configuration>& configs,
                           const std::vector<double>& responses);

}  // namespace fairloop
