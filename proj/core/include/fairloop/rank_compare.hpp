// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace fairloop {

/// Extrapolated rank-biased overlap (Webber et al.) between two rankings of
/// the same item universe. Returns 1.0 for identical rankings; top ranks are
/// weighted by the persistence parameter p in (0, 1).
double rbo(const std::vector<std::string>& ranking_a, const std::vector<std::string>& ranking_b,
           double persistence);

/// Kendall rank correlation (concordant - discordant) / C(n,2) between two
/// rankings of the same item universe without positional ties.
double kendall_tau(const std::vector<std::string>& ranking_a,
                   const std::vector<std::string>& ranking_b);

}  // namespace fairloop
