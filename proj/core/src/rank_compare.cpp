// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include "fairloop/rank_compare.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace fairloop {

namespace {

void validate_rankings(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("empty ranking");
    }
    if (a.size() != b.size()) {
        throw std::invalid_argument("rankings cover different numbers of items");
    }
    std::unordered_set<std::string> set_a(a.begin(), a.end());
    std::unordered_set<std::string> set_b(b.begin(), b.end());
    if (set_a.size() != a.size() || set_b.size() != b.size()) {
        throw std::invalid_argument("ranking contains duplicate items");
    }
    if (set_a != set_b) {
        throw std::invalid_argument("rankings are over different item universes");
    }
}

}  // namespace

double rbo(const std::vector<std::string>& ranking_a, const std::vector<std::string>& ranking_b,
           double persistence) {
    validate_rankings(ranking_a, ranking_b);
    if (persistence <= 0.0 || persistence >= 1.0) {
        throw std::invalid_argument("persistence must lie in (0, 1)");
    }
    const std::size_t n = ranking_a.size();
    const double p = persistence;

    // Overlap at depth d grows by the number of new cross-list matches;
    // a one-shot membership multiset keeps the update O(1) per rank.
    std::unordered_set<std::string> pending;
    double overlap = 0.0;
    double weight = (1.0 - p) / p;  // (1-p)/p * p^d after the multiply below
    double weighted_sum = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
        const std::string& ea = ranking_a[d];
        const std::string& eb = ranking_b[d];
        if (ea == eb) {
            overlap += 1.0;
        } else {
            if (pending.erase(ea) == 1) {
                overlap += 1.0;
            } else {
                pending.insert(ea);
            }
            if (pending.erase(eb) == 1) {
                overlap += 1.0;
            } else {
                pending.insert(eb);
            }
        }
        weight *= p;
        weighted_sum += overlap / static_cast<double>(d + 1) * weight;
    }
    // Extrapolate the agreement at full depth over the unseen tail.
    const double p_n = std::pow(p, static_cast<double>(n));
    return weighted_sum + (overlap / static_cast<double>(n)) * p_n;
}

double kendall_tau(const std::vector<std::string>& ranking_a,
                   const std::vector<std::string>& ranking_b) {
    validate_rankings(ranking_a, ranking_b);
    const std::size_t n = ranking_a.size();
    if (n < 2) {
        throw std::invalid_argument("kendall tau needs at least 2 items");
    }
    std::unordered_map<std::string, std::size_t> pos_b;
    for (std::size_t i = 0; i < n; ++i) {
        pos_b[ranking_b[i]] = i;
    }
    long long concordant = 0;
    long long discordant = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // Ranking a orders (i, j) ascending; check agreement in b.
            if (pos_b.at(ranking_a[i]) < pos_b.at(ranking_a[j])) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return static_cast<double>(concordant - discordant) / pairs;
}

}  // namespace fairloop
