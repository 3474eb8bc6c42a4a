// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "fairloop/design.hpp"

namespace fairloop {

/// Least-squares fit of the (implicitly intercepted) standardized model.
struct FitResult {
    std::vector<double> coefficients;   // per retained column
    std::vector<int> retained_columns;  // indices into DesignMatrix::columns
    std::vector<int> aliased_columns;   // dropped as linearly dependent, left-to-right
    std::vector<double> residuals;
    double ss_resid = 0.0;
    double ss_total = 0.0;  // about the mean of y
    double r_squared = 0.0; // 0 when ss_total == 0 (flagged in the design)
};

/// Solves min ||y - Xb|| by Householder QR after a deterministic
/// left-to-right scan drops linearly dependent columns. The intercept is
/// implicit: y is centered and all columns are standardized.
/// Throws std::invalid_argument when rows < columns + 1 (underdetermined).
FitResult fit_ols(const DesignMatrix& design);

}  // namespace fairloop
