// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fairloop/anova.hpp"
#include "fairloop/covering.hpp"
#include "fairloop/experiment.hpp"
#include "fairloop/pareto.hpp"
#include "fairloop/sim.hpp"

namespace fairloop {

struct PipelineOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output_dir;
    int jobs = 1;
};

struct PipelineResult {
    std::filesystem::path output_dir;
    std::vector<Configuration> configs;
    CampaignResult campaign;
    std::optional<SensitivityReport> report;
    std::optional<ParetoFront> front;
    std::vector<std::string> files;  // names written, relative to output_dir
    std::vector<std::string> notes;  // stage remarks recorded in the manifest
};

/// Configurations to simulate: the full enumeration or a covering sample
/// (whose coverage is re-verified before use).
std::vector<Configuration> select_configurations(const ExperimentConfig& config,
                                                 const ConfigSpace& space, std::uint64_t seed);

/// Builds the per-run metric evaluators for a campaign: the configured
/// long-term metrics plus the selected utility aggregates.
std::vector<CampaignMetric> build_campaign_metrics(const ExperimentConfig& config,
                                                   const CaseStudy& case_study);

std::string configs_csv(const ConfigSpace& space, const std::vector<Configuration>& configs);

std::string traces_csv_header(const ExperimentConfig& config, const CaseStudy& case_study);
std::string traces_csv_rows(const ExperimentConfig& config, const CaseStudy& case_study,
                            const TraceSet& set);

std::string campaign_csv(const ConfigSpace& space, const ExperimentConfig& config,
                         const CampaignResult& result);

/// Campaign rows (per-metric statistics) recovered from a campaign CSV, for
/// staged execution of analyze/pareto on simulate output.
struct CampaignTable {
    std::vector<std::string> metric_ids;
    std::vector<ConfigOutcome> outcomes;
};
CampaignTable read_campaign_csv(const std::string& text, const ConfigSpace& space);

/// Fits the sensitivity model on the per-configuration means of the
/// response metric (failed configurations are excluded).
SensitivityReport sensitivity_from_outcomes(const ConfigSpace& space,
                                            const std::vector<ConfigOutcome>& outcomes,
                                            const std::string& response_id);

std::string sensitivity_report_json(const SensitivityReport& report);
std::string sensitivity_report_markdown(const SensitivityReport& report);

ParetoFront front_from_outcomes(const ExperimentConfig& config,
                                const std::vector<ConfigOutcome>& outcomes);
std::string pareto_csv(const ConfigSpace& space, const ExperimentConfig& config,
                       const ParetoFront& front);
std::string pareto_dat(const ExperimentConfig& config, const ParetoFront& front);

/// Ordered term names of a sensitivity report, optionally restricted to a
/// given term subset (preserving the report's ranking).
std::vector<std::string> ranked_term_names(const SensitivityReport& report,
                                           const std::vector<std::string>& subset = {});

/// Term names of the statistically significant rows (p < 0.05), in rank order.
std::vector<std::string> significant_term_names(const SensitivityReport& report);

/// Executes the full pipeline: sample/enumerate -> campaign -> sensitivity
/// -> trade-off, writing configs/traces/campaign CSVs, the sensitivity
/// report, Pareto files, and the manifest. Byte-identical outputs for
/// identical config+seed, independent of the jobs count. Throws on stage
/// failure after flagging the partial outputs in the manifest.
PipelineResult run_pipeline(const ExperimentConfig& config, const PipelineOverrides& overrides = {});

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace fairloop
