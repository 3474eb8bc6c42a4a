// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairloop/sim.hpp"

namespace fairloop {
namespace policing {

inline constexpr int kGridSize = 20;
inline constexpr int kCellCount = kGridSize * kGridSize;
inline constexpr int kDistrictCount = 4;  // equal quadrants
inline constexpr int kHotspotCount = 50;
inline constexpr double kPredictionDecay = 0.8;

/// Decoded predictive-policing configuration.
struct PolicingParams {
    double discovery_rate_hot = 0.9;    // in {0.8, 0.85, ..., 1.0}
    double discovery_rate_other = 0.3;  // in {0.2, 0.25, ..., 0.5}
    int effect_range = 1;               // in {1, 2, 3}; Chebyshev radius is range-1
};

PolicingParams decode_policing_params(const ConfigSpace& space, const Configuration& config);

int district_of_cell(int cell);

/// Indices of the n cells with the highest intensity estimate; ties broken
/// by cell index ascending.
std::vector<int> allocate_hotspots(const std::vector<double>& intensity, int n);

/// Per-cell discovery probability under an allocation: the full hotspot
/// rate on allocated cells, a ring rate on their Chebyshev-1 neighbors
/// that grows mildly with the effect range, and the baseline rate beyond.
std::vector<double> discovery_rates(const std::vector<int>& hotspots, int range,
                                    double rate_hot, double rate_other);

/// Exponential-decay intensity update from the step's discovered counts.
std::vector<double> update_prediction(const std::vector<double>& lambda_hat,
                                      const std::vector<double>& discovered,
                                      double decay = kPredictionDecay);

/// Per-district share of allocated hotspots relative to the district's
/// warranted share: (hotspots_d / n) / warranted_share_d. The environment
/// passes each district's share of the true incident rate, so a district
/// scores 1 exactly when its policing matches its crime.
std::vector<double> overpolicing_scores(const std::vector<int>& hotspots,
                                        const std::vector<double>& warranted_share);

/// Grid city with a fixed ground-truth incident intensity per cell; only
/// the observation of incidents is biased by hotspot allocation.
class PolicingEnvironment final : public EnvironmentModel {
  public:
    explicit PolicingEnvironment(PolicingParams params);

    void init(RngStream& rng) override;
    InputBatch project(RngStream& rng) override;
    StepEffects observe(const InputBatch& batch, const Decisions& decisions, RngStream& rng) override;
    void shift(RngStream& rng) override;
    std::vector<GroupStats> summarize() const override;
    std::vector<std::string> group_labels() const override;
    std::vector<UtilityDef> utility_defs() const override;

    const std::vector<double>& true_rates() const { return lambda_true_; }
    const std::vector<double>& estimates() const { return lambda_hat_; }

  private:
    PolicingParams params_;
    std::vector<double> lambda_true_;
    std::vector<double> lambda_hat_;
    std::vector<double> pending_discovered_;
    std::vector<int> true_top_cells_;   // top-n cells by ground-truth rate
    std::vector<double> crime_share_;   // per-district share of the true rate
};

/// Allocates the top-n cells of the published intensity estimates.
class PolicingAgent final : public SystemAgent {
  public:
    Outputs predict(const InputBatch& batch) override;
    Decisions decide(const InputBatch& batch, const Outputs& outputs) override;
};

EnvironmentFactory environment_factory(const ConfigSpace& space);
AgentFactory agent_factory(const ConfigSpace& space);

}  // namespace policing
}  // namespace fairloop
