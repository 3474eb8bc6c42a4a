// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include "fairloop/loan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fairloop {
namespace loan {

namespace {

constexpr double kMeanA = 620.0;
constexpr double kMeanB = 560.0;
constexpr double kInitStd = 60.0;
constexpr double kLogisticCenter = 550.0;
constexpr double kLogisticScale = 60.0;

double normal_density_unnormalized(double x, double mean, double std_dev) {
    const double z = (x - mean) / std_dev;
    return std::exp(-0.5 * z * z);
}

}  // namespace

double LoanParams::shift_noise() const {
    switch (shift_mode) {
        case ShiftMode::Expected: return 0.0;
        case ShiftMode::Normal: return 4.0;
        case ShiftMode::Aggressive: return 8.0;
    }
    return 0.0;
}

LoanParams decode_loan_params(const ConfigSpace& space, const Configuration& config) {
    LoanParams params;
    const auto get = [&](const char* name) -> const ParamValue& {
        const int index = space.parameter_index(name);
        if (index < 0) {
            throw std::invalid_argument(std::string("loan space is missing parameter '") + name + "'");
        }
        return config.value(space, static_cast<std::size_t>(index));
    };

    const auto& agent = std::get<std::string>(get("agent"));
    if (agent == "max-util") {
        params.agent = AgentPolicy::MaxUtil;
    } else if (agent == "eq-op") {
        params.agent = AgentPolicy::EqOp;
    } else {
        throw std::invalid_argument("unknown agent policy: " + agent);
    }

    params.bank_utility = std::get<double>(get("bank_utility"));
    params.score_update_repay = std::get<double>(get("score_update_repay"));
    params.score_update_default = std::get<double>(get("score_update_default"));

    const auto& mode = std::get<std::string>(get("shift_mode"));
    if (mode == "expected") {
        params.shift_mode = ShiftMode::Expected;
    } else if (mode == "normal") {
        params.shift_mode = ShiftMode::Normal;
    } else if (mode == "aggressive") {
        params.shift_mode = ShiftMode::Aggressive;
    } else {
        throw std::invalid_argument("unknown shift mode: " + mode);
    }
    return params;
}

double repay_probability(double score) {
    if (score < kScoreMin || score > kScoreMax) {
        throw std::invalid_argument("score out of range [300, 850]");
    }
    return 1.0 / (1.0 + std::exp(-(score - kLogisticCenter) / kLogisticScale));
}

double max_util_threshold(double bank_utility) {
    const double loss = std::abs(bank_utility);
    return loss / (1.0 + loss);
}

int bin_of_score(double score) {
    const int bin = static_cast<int>((score - kScoreMin) / kBinWidth);
    return std::clamp(bin, 0, kBinCount - 1);
}

double bin_center(int bin) {
    return kScoreMin + kBinWidth * bin + kBinWidth / 2.0;
}

LoanEnvironment::LoanEnvironment(LoanParams params) : params_(params) {
    histograms_[0].assign(kBinCount, 0);
    histograms_[1].assign(kBinCount, 0);
}

void LoanEnvironment::init(RngStream& rng) {
    const double means[2] = {kMeanA, kMeanB};
    for (int g = 0; g < 2; ++g) {
        auto& hist = histograms_[g];
        hist.assign(kBinCount, 0);
        for (int i = 0; i < kGroupPopulation; ++i) {
            const double score =
                std::clamp(rng.next_normal(means[g], kInitStd), kScoreMin, kScoreMax);
            hist[static_cast<std::size_t>(bin_of_score(score))] += 1;
        }
    }
    pending_.clear();
    step_ = 0;
}

InputBatch LoanEnvironment::project(RngStream& rng) {
    InputBatch batch;
    batch.units.reserve(kBatchSize);

    std::int64_t total_population = 0;
    for (int g = 0; g < 2; ++g) {
        for (std::int64_t c : histograms_[g]) {
            total_population += c;
        }
    }
    if (total_population == 0) {
        throw std::runtime_error("degenerate population");
    }

    for (int g = 0; g < 2; ++g) {
        const auto& hist = histograms_[g];
        std::int64_t population = 0;
        double mean = 0.0;
        for (int b = 0; b < kBinCount; ++b) {
            population += hist[b];
            mean += static_cast<double>(hist[b]) * bin_center(b);
        }
        if (population == 0) {
            throw std::runtime_error("degenerate population");
        }
        mean /= static_cast<double>(population);

        // Application propensity: group share of the batch, scores weighted
        // by a normal density around the group mean (individuals near the
        // mass apply more often).
        const auto group_draws = static_cast<int>(
            std::llround(static_cast<double>(kBatchSize) * static_cast<double>(population) /
                         static_cast<double>(total_population)));
        std::vector<double> cumulative(kBinCount, 0.0);
        double weight_sum = 0.0;
        for (int b = 0; b < kBinCount; ++b) {
            weight_sum += static_cast<double>(hist[b]) *
                          normal_density_unnormalized(bin_center(b), mean, kApplicationWeightStd);
            cumulative[b] = weight_sum;
        }
        if (weight_sum <= 0.0) {
            throw std::runtime_error("degenerate population");
        }

        std::vector<std::int64_t> drawn(kBinCount, 0);
        for (int i = 0; i < group_draws; ++i) {
            int bin = -1;
            do {
                const double u = rng.next_double() * weight_sum;
                bin = static_cast<int>(
                    std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
                bin = std::min(bin, kBinCount - 1);
            } while (drawn[bin] >= hist[bin]);  // an individual applies at most once per step
            drawn[bin] += 1;
            InputUnit unit;
            unit.group = g;
            // Uniform placement within the bin keeps sub-bin-width score
            // updates unbiased instead of quantizing them away.
            unit.feature = kScoreMin + kBinWidth * (bin + rng.next_double());
            unit.outcome = rng.next_bernoulli(repay_probability(unit.feature));
            batch.units.push_back(unit);
        }
    }
    return batch;
}

StepEffects LoanEnvironment::observe(const InputBatch& batch, const Decisions& decisions,
                                     RngStream& /*rng*/) {
    double profit = 0.0;
    pending_.clear();
    pending_.reserve(batch.units.size());
    for (std::size_t i = 0; i < batch.units.size(); ++i) {
        const auto& unit = batch.units[i];
        PendingMove move;
        move.group = unit.group;
        move.score = unit.feature;
        if (decisions.selected[i] != 0) {
            profit += unit.outcome ? 1.0 : params_.bank_utility;
            move.mean_shift = unit.outcome ? params_.score_update_repay : params_.score_update_default;
        } else {
            move.mean_shift = kRejectionPenalty;
        }
        pending_.push_back(move);
    }

    StepEffects effects;
    effects.step_utilities = {profit, profit};  // slots for total and per-step mean
    return effects;
}

void LoanEnvironment::shift(RngStream& rng) {
    const double sigma = params_.shift_noise();
    for (const auto& move : pending_) {
        auto& hist = histograms_[move.group];
        double delta = move.mean_shift;
        if (sigma > 0.0) {
            delta = rng.next_normal(move.mean_shift, sigma);
        }
        const double new_score = std::clamp(move.score + delta, kScoreMin, kScoreMax);
        hist[static_cast<std::size_t>(bin_of_score(move.score))] -= 1;
        hist[static_cast<std::size_t>(bin_of_score(new_score))] += 1;
    }
    pending_.clear();
    ++step_;
}

std::vector<GroupStats> LoanEnvironment::summarize() const {
    std::vector<GroupStats> groups(2);
    const char* labels[2] = {"a", "b"};
    for (int g = 0; g < 2; ++g) {
        auto& stats = groups[g];
        stats.label = labels[g];
        double mean = 0.0;
        for (int b = 0; b < kBinCount; ++b) {
            stats.population += histograms_[g][b];
            mean += static_cast<double>(histograms_[g][b]) * bin_center(b);
        }
        stats.mean_feature = stats.population > 0 ? mean / static_cast<double>(stats.population) : 0.0;
    }
    return groups;
}

std::vector<std::string> LoanEnvironment::group_labels() const { return {"a", "b"}; }

std::vector<UtilityDef> LoanEnvironment::utility_defs() const {
    return {{"profit", UtilityAggregation::Sum}, {"profit_mean", UtilityAggregation::Mean}};
}

Outputs LoanAgent::predict(const InputBatch& batch) {
    Outputs out;
    out.scores.reserve(batch.units.size());
    for (const auto& unit : batch.units) {
        out.scores.push_back(repay_probability(unit.feature));
    }
    return out;
}

Decisions LoanAgent::decide(const InputBatch& batch, const Outputs& outputs) {
    Decisions decisions;
    decisions.selected.assign(batch.units.size(), 0);

    if (params_.agent == AgentPolicy::MaxUtil) {
        const double threshold = max_util_threshold(params_.bank_utility);
        for (std::size_t i = 0; i < batch.units.size(); ++i) {
            decisions.selected[i] = outputs.scores[i] >= threshold ? 1 : 0;
        }
        last_thresholds_ = {0, 0};
        for (int g = 0; g < 2; ++g) {
            int t = kBinCount;
            for (int b = 0; b < kBinCount; ++b) {
                if (repay_probability(bin_center(b)) >= threshold) {
                    t = b;
                    break;
                }
            }
            last_thresholds_[g] = t;
        }
        return decisions;
    }

    // eq-op: per-group bin thresholds equalizing batch true-positive rates
    // within tolerance, most profitable qualifying pair wins.
    std::array<std::array<double, kBinCount + 1>, 2> suffix_tp{};
    std::array<std::array<double, kBinCount + 1>, 2> suffix_profit{};
    std::array<double, 2> positives{0.0, 0.0};
    std::array<std::array<std::int64_t, kBinCount>, 2> count{};
    std::array<std::array<std::int64_t, kBinCount>, 2> positive_count{};

    for (const auto& unit : batch.units) {
        const int b = bin_of_score(unit.feature);
        count[unit.group][b] += 1;
        if (unit.outcome) {
            positive_count[unit.group][b] += 1;
            positives[unit.group] += 1.0;
        }
    }
    for (int g = 0; g < 2; ++g) {
        suffix_tp[g][kBinCount] = 0.0;
        suffix_profit[g][kBinCount] = 0.0;
        for (int b = kBinCount - 1; b >= 0; --b) {
            const double p = repay_probability(bin_center(b));
            const double unit_profit = p + (1.0 - p) * params_.bank_utility;
            suffix_tp[g][b] = suffix_tp[g][b + 1] + static_cast<double>(positive_count[g][b]);
            suffix_profit[g][b] =
                suffix_profit[g][b + 1] + static_cast<double>(count[g][b]) * unit_profit;
        }
    }
    const auto tpr = [&](int g, int t) {
        return positives[g] > 0.0 ? suffix_tp[g][t] / positives[g] : 0.0;
    };

    // A pair qualifies when the rates sit within the tolerance, or when the
    // counterpart threshold is the best equalization the bin grid offers for
    // the other one. The second clause keeps interior optima reachable: the
    // batch TPRs move in coarse jumps across 10-point bins, so the strict
    // tolerance alone degenerates to approve-nobody corners.
    std::array<std::array<int, kBinCount + 1>, 2> best_counterpart{};
    for (int g = 0; g < 2; ++g) {
        const int other = 1 - g;
        for (int t = 0; t <= kBinCount; ++t) {
            double best_gap = std::numeric_limits<double>::infinity();
            int best = kBinCount;
            for (int u = 0; u <= kBinCount; ++u) {
                const double gap = std::abs(tpr(g, t) - tpr(other, u));
                if (gap < best_gap) {
                    best_gap = gap;
                    best = u;
                }
            }
            best_counterpart[g][t] = best;
        }
    }

    // Pass 1: the best achievable expected profit over qualifying pairs.
    double best_profit = -std::numeric_limits<double>::infinity();
    bool found = false;
    const auto qualifying = [&](int ta, int tb) {
        return std::abs(tpr(0, ta) - tpr(1, tb)) <= kTprTolerance ||
               best_counterpart[0][ta] == tb || best_counterpart[1][tb] == ta;
    };
    for (int ta = 0; ta <= kBinCount; ++ta) {
        for (int tb = 0; tb <= kBinCount; ++tb) {
            if (!qualifying(ta, tb)) {
                continue;
            }
            const double profit = suffix_profit[0][ta] + suffix_profit[1][tb];
            if (!found || profit > best_profit) {
                found = true;
                best_profit = profit;
            }
        }
    }
    // Pass 2: among pairs within the batch-noise band of the optimum, take
    // the best-equalized one (ties by lexicographic threshold order).
    const double profit_band = std::max(0.005 * std::abs(best_profit), 1e-9);
    int best_ta = kBinCount;
    int best_tb = kBinCount;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int ta = 0; ta <= kBinCount && found; ++ta) {
        for (int tb = 0; tb <= kBinCount; ++tb) {
            if (!qualifying(ta, tb)) {
                continue;
            }
            const double profit = suffix_profit[0][ta] + suffix_profit[1][tb];
            if (profit < best_profit - profit_band) {
                continue;
            }
            const double gap = std::abs(tpr(0, ta) - tpr(1, tb));
            if (gap < best_gap) {
                best_gap = gap;
                best_ta = ta;
                best_tb = tb;
            }
        }
    }

    last_thresholds_ = {best_ta, best_tb};
    for (std::size_t i = 0; i < batch.units.size(); ++i) {
        const auto& unit = batch.units[i];
        const int threshold = unit.group == 0 ? best_ta : best_tb;
        decisions.selected[i] = bin_of_score(unit.feature) >= threshold ? 1 : 0;
    }
    return decisions;
}

EnvironmentFactory environment_factory(const ConfigSpace& space) {
    return [space](const Configuration& config) -> std::unique_ptr<EnvironmentModel> {
        return std::make_unique<LoanEnvironment>(decode_loan_params(space, config));
    };
}

AgentFactory agent_factory(const ConfigSpace& space) {
    return [space](const Configuration& config) -> std::unique_ptr<SystemAgent> {
        return std::make_unique<LoanAgent>(decode_loan_params(space, config));
    };
}

}  // namespace loan
}  // namespace fairloop
