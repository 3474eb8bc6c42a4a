// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include "fairloop/policing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fairloop {
namespace policing {

namespace {

constexpr double kGammaShapeScale = 0.5;  // Gamma(2, 0.5): mean incident rate 1.0
constexpr double kScaledDistrictFactor = 1.5;
constexpr int kScaledDistrict = 0;
constexpr double kInitNoise = 0.1;
}  // namespace

PolicingParams decode_policing_params(const ConfigSpace& space, const Configuration& config) {
    PolicingParams params;
    const auto get = [&](const char* name) -> const ParamValue& {
        const int index = space.parameter_index(name);
        if (index < 0) {
            throw std::invalid_argument(std::string("policing space is missing parameter '") + name +
                                        "'");
        }
        return config.value(space, static_cast<std::size_t>(index));
    };
    params.discovery_rate_hot = std::get<double>(get("discovery_rate_hot"));
    params.discovery_rate_other = std::get<double>(get("discovery_rate_other"));
    params.effect_range = static_cast<int>(std::get<double>(get("effect_range")));
    if (params.effect_range < 1) {
        throw std::invalid_argument("effect_range must be at least 1");
    }
    return params;
}

int district_of_cell(int cell) {
    const int row = cell / kGridSize;
    const int col = cell % kGridSize;
    return (row >= kGridSize / 2 ? 2 : 0) + (col >= kGridSize / 2 ? 1 : 0);
}

std::vector<int> allocate_hotspots(const std::vector<double>& intensity, int n) {
    if (n < 0 || n > static_cast<int>(intensity.size())) {
        throw std::invalid_argument("hotspot count out of range");
    }
    std::vector<int> cells(intensity.size());
    std::iota(cells.begin(), cells.end(), 0);
    std::stable_sort(cells.begin(), cells.end(), [&](int a, int b) {
        return intensity[static_cast<std::size_t>(a)] > intensity[static_cast<std::size_t>(b)];
    });
    cells.resize(static_cast<std::size_t>(n));
    std::sort(cells.begin(), cells.end());
    return cells;
}

std::vector<double> discovery_rates(const std::vector<int>& hotspots, int range,
                                    double rate_hot, double rate_other) {
    // Patrol presence concentrates on the hotspot cell and spills into the
    // adjacent ring at a strength that grows mildly with the effect range;
    // beyond the ring only the baseline rate applies.
    if (range < 1) {
        throw std::invalid_argument("effect range must be at least 1");
    }
    std::vector<double> rates(kCellCount, rate_other);
    const double ring_rate = rate_hot * (0.78 + 0.07 * range);
    for (int cell : hotspots) {
        const int row = cell / kGridSize;
        const int col = cell % kGridSize;
        for (int r = std::max(0, row - 1); r <= std::min(kGridSize - 1, row + 1); ++r) {
            for (int c = std::max(0, col - 1); c <= std::min(kGridSize - 1, col + 1); ++c) {
                auto& slot = rates[static_cast<std::size_t>(r * kGridSize + c)];
                slot = std::max(slot, r == row && c == col ? rate_hot : ring_rate);
            }
        }
    }
    // Hotspot cells always see the full rate, even next to other hotspots.
    for (int cell : hotspots) {
        rates[static_cast<std::size_t>(cell)] = rate_hot;
    }
    return rates;
}

std::vector<double> update_prediction(const std::vector<double>& lambda_hat,
                                      const std::vector<double>& discovered, double decay) {
    if (lambda_hat.size() != discovered.size()) {
        throw std::invalid_argument("estimate and discovery vectors differ in size");
    }
    std::vector<double> next(lambda_hat.size());
    for (std::size_t i = 0; i < lambda_hat.size(); ++i) {
        next[i] = std::max(0.0, decay * lambda_hat[i] + (1.0 - decay) * discovered[i]);
    }
    return next;
}

std::vector<double> overpolicing_scores(const std::vector<int>& hotspots,
                                        const std::vector<double>& warranted_share) {
    if (hotspots.empty()) {
        throw std::invalid_argument("no hotspots allocated");
    }
    if (warranted_share.size() != kDistrictCount) {
        throw std::invalid_argument("expected one warranted share per district");
    }
    std::vector<double> per_district(kDistrictCount, 0.0);
    for (int cell : hotspots) {
        per_district[static_cast<std::size_t>(district_of_cell(cell))] += 1.0;
    }
    const double n = static_cast<double>(hotspots.size());
    for (int d = 0; d < kDistrictCount; ++d) {
        const double share = warranted_share[static_cast<std::size_t>(d)];
        if (share <= 0.0) {
            throw std::invalid_argument("warranted share must be positive");
        }
        per_district[static_cast<std::size_t>(d)] =
            (per_district[static_cast<std::size_t>(d)] / n) / share;
    }
    return per_district;
}

PolicingEnvironment::PolicingEnvironment(PolicingParams params) : params_(params) {}

void PolicingEnvironment::init(RngStream& rng) {
    lambda_true_.assign(kCellCount, 0.0);
    for (int cell = 0; cell < kCellCount; ++cell) {
        double rate = rng.next_gamma_shape2(kGammaShapeScale);
        if (district_of_cell(cell) == kScaledDistrict) {
            rate *= kScaledDistrictFactor;  // a genuinely higher-crime district
        }
        lambda_true_[static_cast<std::size_t>(cell)] = rate;
    }
    lambda_hat_.assign(kCellCount, 0.0);
    for (int cell = 0; cell < kCellCount; ++cell) {
        lambda_hat_[static_cast<std::size_t>(cell)] =
            std::max(0.0, lambda_true_[static_cast<std::size_t>(cell)] + rng.next_normal(0.0, kInitNoise));
    }
    pending_discovered_.clear();
    true_top_cells_ = allocate_hotspots(lambda_true_, kHotspotCount);

    crime_share_.assign(kDistrictCount, 0.0);
    double total = 0.0;
    for (int cell = 0; cell < kCellCount; ++cell) {
        crime_share_[static_cast<std::size_t>(district_of_cell(cell))] +=
            lambda_true_[static_cast<std::size_t>(cell)];
        total += lambda_true_[static_cast<std::size_t>(cell)];
    }
    for (double& share : crime_share_) {
        share /= total;
    }
}

InputBatch PolicingEnvironment::project(RngStream& /*rng*/) {
    InputBatch batch;
    batch.units.reserve(kCellCount);
    for (int cell = 0; cell < kCellCount; ++cell) {
        InputUnit unit;
        unit.group = district_of_cell(cell);
        unit.cell = cell;
        unit.feature = lambda_hat_[static_cast<std::size_t>(cell)];
        batch.units.push_back(unit);
    }
    return batch;
}

StepEffects PolicingEnvironment::observe(const InputBatch& batch, const Decisions& decisions,
                                         RngStream& rng) {
    std::vector<int> hotspots;
    hotspots.reserve(kHotspotCount);
    for (std::size_t i = 0; i < batch.units.size(); ++i) {
        if (decisions.selected[i] != 0) {
            hotspots.push_back(batch.units[i].cell);
        }
    }
    const auto rates = discovery_rates(hotspots, params_.effect_range,
                                       params_.discovery_rate_hot,
                                       params_.discovery_rate_other);

    pending_discovered_.assign(kCellCount, 0.0);
    std::int64_t total_incidents = 0;
    std::int64_t total_discovered = 0;
    for (int cell = 0; cell < kCellCount; ++cell) {
        const int incidents = rng.next_poisson(lambda_true_[static_cast<std::size_t>(cell)]);
        total_incidents += incidents;
        const double rate = rates[static_cast<std::size_t>(cell)];
        int discovered = 0;
        for (int i = 0; i < incidents; ++i) {
            discovered += rng.next_bernoulli(rate) ? 1 : 0;
        }
        pending_discovered_[static_cast<std::size_t>(cell)] = discovered;
        total_discovered += discovered;
    }

    std::int64_t correct = 0;
    for (int cell : hotspots) {
        if (std::binary_search(true_top_cells_.begin(), true_top_cells_.end(), cell)) {
            ++correct;
        }
    }

    StepEffects effects;
    effects.step_utilities = {
        static_cast<double>(total_discovered),
        total_incidents > 0 ? static_cast<double>(total_discovered) /
                                  static_cast<double>(total_incidents)
                            : 0.0,
        static_cast<double>(correct),
    };
    effects.district_scores = overpolicing_scores(hotspots, crime_share_);
    return effects;
}

void PolicingEnvironment::shift(RngStream& /*rng*/) {
    if (pending_discovered_.empty()) {
        throw std::logic_error("shift called before observe");
    }
    lambda_hat_ = update_prediction(lambda_hat_, pending_discovered_, kPredictionDecay);
    pending_discovered_.clear();
}

std::vector<GroupStats> PolicingEnvironment::summarize() const {
    std::vector<GroupStats> groups(kDistrictCount);
    std::vector<double> sums(kDistrictCount, 0.0);
    for (int cell = 0; cell < kCellCount; ++cell) {
        const int d = district_of_cell(cell);
        groups[static_cast<std::size_t>(d)].population += 1;
        sums[static_cast<std::size_t>(d)] += lambda_hat_[static_cast<std::size_t>(cell)];
    }
    const auto labels = group_labels();
    for (int d = 0; d < kDistrictCount; ++d) {
        groups[static_cast<std::size_t>(d)].label = labels[static_cast<std::size_t>(d)];
        groups[static_cast<std::size_t>(d)].mean_feature =
            sums[static_cast<std::size_t>(d)] /
            static_cast<double>(groups[static_cast<std::size_t>(d)].population);
    }
    return groups;
}

std::vector<std::string> PolicingEnvironment::group_labels() const {
    return {"d0", "d1", "d2", "d3"};
}

std::vector<UtilityDef> PolicingEnvironment::utility_defs() const {
    return {{"discovered_total", UtilityAggregation::Sum},
            {"discovery_rate", UtilityAggregation::Mean},
            {"correct_hotspots", UtilityAggregation::Mean}};
}

Outputs PolicingAgent::predict(const InputBatch& batch) {
    Outputs out;
    out.scores.reserve(batch.units.size());
    for (const auto& unit : batch.units) {
        out.scores.push_back(unit.feature);
    }
    return out;
}

Decisions PolicingAgent::decide(const InputBatch& batch, const Outputs& outputs) {
    // Indices into the score vector are unit indices (cells arrive in order).
    const std::vector<int> top_units = allocate_hotspots(outputs.scores, kHotspotCount);
    Decisions decisions;
    decisions.selected.assign(batch.units.size(), 0);
    for (int unit : top_units) {
        decisions.selected[static_cast<std::size_t>(unit)] = 1;
    }
    return decisions;
}

EnvironmentFactory environment_factory(const ConfigSpace& space) {
    return [space](const Configuration& config) -> std::unique_ptr<EnvironmentModel> {
        return std::make_unique<PolicingEnvironment>(decode_policing_params(space, config));
    };
}

AgentFactory agent_factory(const ConfigSpace& /*space*/) {
    return [](const Configuration&) -> std::unique_ptr<SystemAgent> {
        return std::make_unique<PolicingAgent>();
    };
}

}  // namespace policing
}  // namespace fairloop
