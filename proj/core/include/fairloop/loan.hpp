// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fairloop/sim.hpp"

namespace fairloop {
namespace loan {

inline constexpr double kScoreMin = 300.0;
inline constexpr double kScoreMax = 850.0;
inline constexpr int kBinWidth = 10;
inline constexpr int kBinCount = 55;
inline constexpr int kGroupPopulation = 10000;
inline constexpr int kBatchSize = 1000;
inline constexpr double kRejectionPenalty = -5.0;  // hard-inquiry effect
// Width of the application-propensity weight around the group mean.
inline constexpr double kApplicationWeightStd = 35.0;
inline constexpr double kTprTolerance = 0.01;

enum class AgentPolicy { MaxUtil, EqOp };
enum class ShiftMode { Expected, Normal, Aggressive };

/// Decoded loan-lending configuration.
struct LoanParams {
    AgentPolicy agent = AgentPolicy::MaxUtil;
    double bank_utility = -3.0;         // payoff of a default, in {-10..-3}
    double score_update_repay = 12.0;   // in {8, 12, 16, 20}
    double score_update_default = -24.0;  // in {-40, -32, -24, -16}
    ShiftMode shift_mode = ShiftMode::Expected;

    double shift_noise() const;  // sigma per mode: expected 0, normal 4, aggressive 8
};

LoanParams decode_loan_params(const ConfigSpace& space, const Configuration& config);

/// Likelihood of on-time repayment: logistic in the credit score, centered
/// at 550 with scale 60; group-independent. Scores outside [300, 850] are
/// rejected with std::invalid_argument.
double repay_probability(double score);

/// Break-even repayment probability of the max-util policy: the p solving
/// p + (1 - p) * u = 0, i.e. |u| / (1 + |u|).
double max_util_threshold(double bank_utility);

int bin_of_score(double score);
double bin_center(int bin);

/// Two-group credit-score population over discrete bins. Individuals move
/// between bins; they are never created or destroyed.
class LoanEnvironment final : public EnvironmentModel {
  public:
    explicit LoanEnvironment(LoanParams params);

    void init(RngStream& rng) override;
    InputBatch project(RngStream& rng) override;
    StepEffects observe(const InputBatch& batch, const Decisions& decisions, RngStream& rng) override;
    void shift(RngStream& rng) override;
    std::vector<GroupStats> summarize() const override;
    std::vector<std::string> group_labels() const override;
    std::vector<UtilityDef> utility_defs() const override;

    const std::array<std::vector<std::int64_t>, 2>& histograms() const { return histograms_; }

  private:
    struct PendingMove {
        int group = 0;
        double score = 0.0;
        double mean_shift = 0.0;
    };

    LoanParams params_;
    std::array<std::vector<std::int64_t>, 2> histograms_;
    std::vector<PendingMove> pending_;
    int step_ = 0;
};

/// Threshold decision maker over repayment predictions: a single break-even
/// probability threshold (max-util) or per-group score thresholds searched
/// to equalize the groups' true-positive rates (eq-op).
class LoanAgent final : public SystemAgent {
  public:
    explicit LoanAgent(LoanParams params) : params_(params) {}

    Outputs predict(const InputBatch& batch) override;
    Decisions decide(const InputBatch& batch, const Outputs& outputs) override;

    /// Per-group approval thresholds (bin index; units with bin >= threshold
    /// are approved) chosen by the last decide() call.
    const std::array<int, 2>& last_thresholds() const { return last_thresholds_; }

  private:
    LoanParams params_;
    std::array<int, 2> last_thresholds_{0, 0};
};

EnvironmentFactory environment_factory(const ConfigSpace& space);
AgentFactory agent_factory(const ConfigSpace& space);

}  // namespace loan
}  // namespace fairloop
