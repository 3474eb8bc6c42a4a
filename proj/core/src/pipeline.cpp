// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include "fairloop/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fairloop/csv.hpp"
#include "fairloop/digest.hpp"
#include "fairloop/metrics.hpp"
#include "fairloop/version.hpp"

namespace fairloop {

namespace {

using nlohmann::json;

std::string sanitize_for_csv(std::string text) {
    for (char& c : text) {
        if (c == ',' || c == '\n' || c == '\r') {
            c = ';';
        }
    }
    return text;
}

// ISO-8601 UTC; honors SOURCE_DATE_EPOCH for reproducible outputs.
std::string timestamp_utc() {
    std::time_t now = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    }
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::size_t count_lines(const std::string& content) {
    return static_cast<std::size_t>(std::count(content.begin(), content.end(), '\n'));
}

// Distinct per-snapshot criteria of the configured metrics, in first
// appearance order.
std::vector<std::string> distinct_criteria(const ExperimentConfig& config) {
    std::vector<std::string> ids;
    for (const auto& m : config.metrics) {
        if (std::find(ids.begin(), ids.end(), m.criterion) == ids.end()) {
            ids.push_back(m.criterion);
        }
    }
    return ids;
}

int utility_slot(const CaseStudy& case_study, const std::string& id) {
    for (std::size_t i = 0; i < case_study.utilities.size(); ++i) {
        if (case_study.utilities[i].id == id) {
            return static_cast<int>(i);
        }
    }
    throw std::invalid_argument("utility '" + id + "' not provided by case study");
}

}  // namespace

std::vector<Configuration> select_configurations(const ExperimentConfig& config,
                                                 const ConfigSpace& space, std::uint64_t seed) {
    if (config.sampling.mode == SamplingSpec::Mode::Full) {
        return enumerate_configs(space);
    }
    auto configs = sample_covering_array(space, config.sampling.strength, seed);
    const auto missing = verify_coverage(configs, space, config.sampling.strength);
    if (!missing.empty()) {
        throw std::logic_error("covering array generator produced an incomplete array");
    }
    return configs;
}

std::vector<CampaignMetric> build_campaign_metrics(const ExperimentConfig& config,
                                                   const CaseStudy& case_study) {
    std::vector<CampaignMetric> metrics;
    for (const auto& m : config.metrics) {
        const LongTermMetric lf = make_long_term_metric(m.criterion, m.mode);
        metrics.push_back(CampaignMetric{lf.id, lf});
    }
    for (const auto& id : config.utilities) {
        const int slot = utility_slot(case_study, id);
        const UtilityAggregation agg = case_study.utilities[static_cast<std::size_t>(slot)].aggregation;
        metrics.push_back(CampaignMetric{id, [slot, agg](const Trace& t) {
                                             double sum = 0.0;
                                             for (const auto& s : t.snapshots) {
                                                 sum += s.step_utilities.at(
                                                     static_cast<std::size_t>(slot));
                                             }
                                             if (agg == UtilityAggregation::Mean) {
                                                 sum /= static_cast<double>(t.snapshots.size());
                                             }
                                             return sum;
                                         }});
    }
    return metrics;
}

std::string configs_csv(const ConfigSpace& space, const std::vector<Configuration>& configs) {
    std::string out;
    std::vector<std::string> header{"config_id"};
    for (const auto& p : space.parameters()) {
        header.push_back(p.name);
    }
    out += csv::row(header);
    for (const auto& config : configs) {
        std::vector<std::string> fields{csv::integer(static_cast<std::int64_t>(config.id))};
        for (std::size_t p = 0; p < space.parameter_count(); ++p) {
            fields.push_back(param_value_to_string(config.value(space, p)));
        }
        out += csv::row(fields);
    }
    return out;
}

std::string traces_csv_header(const ExperimentConfig& config, const CaseStudy& case_study) {
    std::vector<std::string> header{"config_id", "run", "step"};
    for (const auto& id : distinct_criteria(config)) {
        header.push_back(id);
    }
    for (const auto& id : config.utilities) {
        header.push_back(id + "_step");
    }
    for (const auto& label : case_study.group_labels) {
        header.push_back(label + "_population");
        header.push_back(label + "_mean");
        header.push_back(label + "_selected");
        header.push_back(label + "_total");
        header.push_back(label + "_positives");
        header.push_back(label + "_tp");
    }
    return csv::row(header);
}

std::string traces_csv_rows(const ExperimentConfig& config, const CaseStudy& case_study,
                            const TraceSet& set) {
    const auto criteria_ids = distinct_criteria(config);
    std::vector<SnapshotCriterion> criteria;
    for (const auto& id : criteria_ids) {
        criteria.push_back(criterion_by_id(id));
    }
    std::vector<int> slots;
    for (const auto& id : config.utilities) {
        slots.push_back(utility_slot(case_study, id));
    }

    std::string out;
    for (const auto& trace : set.traces) {
        for (const auto& snapshot : trace.snapshots) {
            std::vector<std::string> fields{
                csv::integer(static_cast<std::int64_t>(trace.config_id)),
                csv::integer(trace.run_index),
                csv::integer(snapshot.step),
            };
            for (const auto& criterion : criteria) {
                fields.push_back(csv::real(criterion(snapshot)));
            }
            for (int slot : slots) {
                fields.push_back(
                    csv::real(snapshot.step_utilities.at(static_cast<std::size_t>(slot))));
            }
            for (const auto& group : snapshot.groups) {
                fields.push_back(csv::integer(group.population));
                fields.push_back(csv::real(group.mean_feature));
                fields.push_back(csv::integer(group.selected));
                fields.push_back(csv::integer(group.total));
                fields.push_back(csv::integer(group.positives));
                fields.push_back(csv::integer(group.true_positives));
            }
            out += csv::row(fields);
        }
    }
    return out;
}

std::string campaign_csv(const ConfigSpace& space, const ExperimentConfig& config,
                         const CampaignResult& result) {
    const auto metric_ids = campaign_metric_ids(config);
    std::vector<std::string> header{"config_id"};
    for (const auto& p : space.parameters()) {
        header.push_back(p.name);
    }
    for (const auto& id : metric_ids) {
        header.push_back(id + "_mean");
        header.push_back(id + "_std");
    }
    header.push_back("m");
    header.push_back("stop_reason");
    header.push_back("error");

    std::string out = csv::row(header);
    for (const auto& outcome : result.outcomes) {
        std::vector<std::string> fields{csv::integer(static_cast<std::int64_t>(outcome.config_id))};
        const Configuration config_point{outcome.config_id, outcome.assignments};
        for (std::size_t p = 0; p < space.parameter_count(); ++p) {
            fields.push_back(param_value_to_string(config_point.value(space, p)));
        }
        for (const auto& id : metric_ids) {
            const auto it = outcome.metric_stats.find(id);
            if (it == outcome.metric_stats.end()) {
                fields.push_back("");
                fields.push_back("");
            } else {
                fields.push_back(csv::real(it->second.mean));
                fields.push_back(csv::real(it->second.std_dev));
            }
        }
        fields.push_back(csv::integer(static_cast<std::int64_t>(outcome.runs)));
        fields.push_back(outcome.error ? "" : to_string(outcome.stop_reason));
        fields.push_back(outcome.error ? sanitize_for_csv(*outcome.error) : "");
        out += csv::row(fields);
    }
    return out;
}

CampaignTable read_campaign_csv(const std::string& text, const ConfigSpace& space) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("campaign CSV is empty");
    }
    const auto header = csv::split_row(line);
    const std::size_t params = space.parameter_count();
    if (header.size() < params + 4 || header[0] != "config_id") {
        throw std::invalid_argument("campaign CSV header does not match the experiment space");
    }
    for (std::size_t p = 0; p < params; ++p) {
        if (header[1 + p] != space.parameters()[p].name) {
            throw std::invalid_argument("campaign CSV parameter column '" + header[1 + p] +
                                        "' does not match space parameter '" +
                                        space.parameters()[p].name + "'");
        }
    }

    CampaignTable table;
    std::size_t col = 1 + params;
    while (col + 3 <= header.size() && header[col].size() > 5 &&
           header[col].rfind("_mean") == header[col].size() - 5) {
        const std::string id = header[col].substr(0, header[col].size() - 5);
        if (col + 1 >= header.size() || header[col + 1] != id + "_std") {
            throw std::invalid_argument("campaign CSV metric columns are malformed at '" +
                                        header[col] + "'");
        }
        table.metric_ids.push_back(id);
        col += 2;
    }
    if (col + 3 != header.size() || header[col] != "m" || header[col + 1] != "stop_reason" ||
        header[col + 2] != "error") {
        throw std::invalid_argument("campaign CSV trailer columns are malformed");
    }

    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto fields = csv::split_row(line);
        if (fields.size() != header.size()) {
            throw std::invalid_argument("campaign CSV row has wrong field count");
        }
        ConfigOutcome outcome;
        outcome.config_id = std::stoull(fields[0]);
        outcome.assignments = assignments_from_config_id(space, outcome.config_id);
        std::size_t f = 1 + params;
        for (const auto& id : table.metric_ids) {
            if (!fields[f].empty()) {
                RunStatistics stats;
                stats.mean = std::stod(fields[f]);
                stats.std_dev = std::stod(fields[f + 1]);
                outcome.metric_stats[id] = stats;
            }
            f += 2;
        }
        outcome.runs = static_cast<std::size_t>(std::stoull(fields[f]));
        for (auto& [id, stats] : outcome.metric_stats) {
            stats.runs = outcome.runs;
        }
        if (!fields[f + 2].empty()) {
            outcome.error = fields[f + 2];
        }
        table.outcomes.push_back(std::move(outcome));
    }
    return table;
}

SensitivityReport sensitivity_from_outcomes(const ConfigSpace& space,
                                            const std::vector<ConfigOutcome>& outcomes,
                                            const std::string& response_id) {
    std::vector<Configuration> configs;
    std::vector<double> responses;
    for (const auto& outcome : outcomes) {
        if (outcome.error) {
            continue;
        }
        const auto it = outcome.metric_stats.find(response_id);
        if (it == outcome.metric_stats.end()) {
            throw std::invalid_argument("campaign results carry no metric '" + response_id + "'");
        }
        configs.push_back(Configuration{outcome.config_id, outcome.assignments});
        responses.push_back(it->second.mean);
    }
    if (configs.size() < 2) {
        throw std::runtime_error("sensitivity analysis needs at least 2 successful configurations");
    }
    const DesignMatrix design = encode_design(space, configs, responses);
    const FitResult fit = fit_ols(design);
    const AnovaTable table = anova(design, fit, space);
    SensitivityReport report = rank_terms(table);
    report.row_count = configs.size();
    report.response_id = response_id;
    return report;
}

std::string sensitivity_report_json(const SensitivityReport& report) {
    json j;
    j["response"] = report.response_id;
    j["rows"] = report.row_count;
    j["r_squared"] = report.r_squared;
    j["ss_total"] = report.ss_total;
    j["ss_residual"] = report.ss_resid;
    j["df_residual"] = report.df_resid;
    j["ss_total_zero"] = report.ss_total_zero;
    j["dropped_columns"] = report.dropped_columns;
    json terms = json::array();
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        json term;
        term["rank"] = i + 1;
        term["term"] = row.name;
        term["kind"] = row.term.kind == TermKind::Main ? "main" : "interaction";
        term["dummies"] = row.dummy_labels;
        term["coefficients"] = row.coefficients;
        term["sum_sq"] = row.sum_sq;
        term["df"] = row.df;
        if (row.f_stat) {
            term["f"] = *row.f_stat;
        }
        if (row.p_value) {
            term["p"] = *row.p_value;
        }
        term["eta_squared"] = row.eta_squared;
        term["effect"] = to_string(row.effect);
        term["significant"] = row.significant;
        term["stars"] = significance_stars(row.p_value);
        terms.push_back(std::move(term));
    }
    j["terms"] = terms;
    return j.dump(2) + "\n";
}

std::string sensitivity_report_markdown(const SensitivityReport& report) {
    std::string out;
    out += "# Sensitivity analysis\n\n";
    out += "Response: `" + report.response_id + "` over " + std::to_string(report.row_count) +
           " configurations.\n\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", report.r_squared);
    out += "Model R² = " + std::string(buf);
    if (report.ss_total_zero) {
        out += " (response constant; fit undefined)";
    }
    out += "\n\n";
    out += "| # | Term | Dummies | Coefficient | Sum Sq. | η² (%) | Effect |\n";
    out += "|---|------|---------|-------------|---------|--------|--------|\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        const std::string stars = significance_stars(row.p_value);
        std::string dummies;
        std::string coefficients;
        for (std::size_t c = 0; c < row.coefficients.size(); ++c) {
            if (c > 0) {
                dummies += "<br>";
                coefficients += "<br>";
            }
            dummies += row.dummy_labels[c];
            std::snprintf(buf, sizeof(buf), "%.3E", row.coefficients[c]);
            coefficients += std::string(buf) + stars;
        }
        std::snprintf(buf, sizeof(buf), "%.3E", row.sum_sq);
        const std::string sum_sq = std::string(buf) + stars;
        std::snprintf(buf, sizeof(buf), "%.2f", row.eta_squared * 100.0);
        out += "| " + std::to_string(i + 1) + " | " + row.name + " | " + dummies + " | " +
               coefficients + " | " + sum_sq + " | " + buf + " | " + to_string(row.effect) +
               " |\n";
    }
    out += "\np-values: ***p < .001; **p < .01; *p < .05\n";
    if (!report.dropped_columns.empty()) {
        out += "\nDropped columns:\n";
        for (const auto& d : report.dropped_columns) {
            out += "- " + d + "\n";
        }
    }
    return out;
}

ParetoFront front_from_outcomes(const ExperimentConfig& config,
                                const std::vector<ConfigOutcome>& outcomes) {
    if (config.objectives.empty()) {
        throw std::invalid_argument("no objectives configured");
    }
    std::vector<ParetoPoint> points;
    for (const auto& outcome : outcomes) {
        if (outcome.error) {
            continue;
        }
        ParetoPoint point;
        point.config_id = outcome.config_id;
        for (const auto& objective : config.objectives) {
            const auto it = outcome.metric_stats.find(objective.metric_id);
            if (it == outcome.metric_stats.end()) {
                throw std::invalid_argument("campaign results carry no metric '" +
                                            objective.metric_id + "'");
            }
            point.objectives.push_back(it->second.mean);
        }
        points.push_back(std::move(point));
    }
    return pareto_front(points, config.objectives);
}

std::string pareto_csv(const ConfigSpace& space, const ExperimentConfig& config,
                       const ParetoFront& front) {
    std::vector<std::string> header{"config_id"};
    for (const auto& p : space.parameters()) {
        header.push_back(p.name);
    }
    for (const auto& objective : config.objectives) {
        header.push_back(objective.metric_id);
    }
    for (const auto& objective : config.objectives) {
        header.push_back(objective.metric_id + "_scaled");
    }
    std::string out = csv::row(header);
    const auto scaled = normalize_for_radar(front);
    for (std::size_t i = 0; i < front.members.size(); ++i) {
        const auto& member = front.members[i];
        std::vector<std::string> fields{csv::integer(static_cast<std::int64_t>(member.config_id))};
        const Configuration config_point{member.config_id,
                                         assignments_from_config_id(space, member.config_id)};
        for (std::size_t p = 0; p < space.parameter_count(); ++p) {
            fields.push_back(param_value_to_string(config_point.value(space, p)));
        }
        for (double v : member.objectives) {
            fields.push_back(csv::real(v));
        }
        for (double v : scaled[i]) {
            fields.push_back(csv::real(v));
        }
        out += csv::row(fields);
    }
    return out;
}

std::string pareto_dat(const ExperimentConfig& config, const ParetoFront& front) {
    // gnuplot-friendly: whitespace separated, '#' comments.
    std::string out = "# scaled objectives, higher is better\n# config_id";
    for (const auto& objective : config.objectives) {
        out += " " + objective.metric_id;
    }
    out += "\n";
    const auto scaled = normalize_for_radar(front);
    for (std::size_t i = 0; i < front.members.size(); ++i) {
        out += std::to_string(front.members[i].config_id);
        for (double v : scaled[i]) {
            out += " " + csv::real(v);
        }
        out += "\n";
    }
    return out;
}

std::vector<std::string> ranked_term_names(const SensitivityReport& report,
                                           const std::vector<std::string>& subset) {
    std::vector<std::string> names;
    for (const auto& row : report.rows) {
        if (subset.empty() ||
            std::find(subset.begin(), subset.end(), row.name) != subset.end()) {
            names.push_back(row.name);
        }
    }
    return names;
}

std::vector<std::string> significant_term_names(const SensitivityReport& report) {
    std::vector<std::string> names;
    for (const auto& row : report.rows) {
        if (row.significant) {
            names.push_back(row.name);
        }
    }
    return names;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open for reading: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

PipelineResult run_pipeline(const ExperimentConfig& input_config,
                            const PipelineOverrides& overrides) {
    PipelineResult result;
    ExperimentConfig config = input_config;
    if (overrides.seed) {
        config.seed = *overrides.seed;
    }
    if (overrides.output_dir) {
        config.output_dir = *overrides.output_dir;
    }
    const std::uint64_t seed = config.seed;
    result.output_dir = config.output_dir;
    std::filesystem::create_directories(result.output_dir);

    const ConfigSpace space = build_config_space(config);
    const CaseStudy& case_study = case_by_id(config.case_study);

    json manifest;
    manifest["tool"] = kToolName;
    manifest["version"] = kToolVersion;
    manifest["created_at"] = timestamp_utc();
    manifest["config_hash"] = sha256_hex(canonical_config_json(config));
    manifest["seed"] = seed;
    manifest["case_study"] = config.case_study;
    json inventory = json::array();

    const auto emit = [&](const std::string& name, const std::string& content, bool csv_file) {
        write_text_file(result.output_dir / name, content);
        const std::size_t lines = count_lines(content);
        json entry;
        entry["name"] = name;
        entry["rows"] = csv_file && lines > 0 ? lines - 1 : lines;  // data rows for CSVs
        entry["sha256"] = sha256_hex(content);
        inventory.push_back(entry);
        result.files.push_back(name);
    };
    const auto finalize_manifest = [&](const std::string& status, const std::string& error) {
        manifest["status"] = status;
        if (!error.empty()) {
            manifest["error"] = error;
        }
        manifest["files"] = inventory;
        manifest["notes"] = result.notes;
        write_text_file(result.output_dir / "manifest.json", manifest.dump(2) + "\n");
        result.files.push_back("manifest.json");
    };

    try {
        result.configs = select_configurations(config, space, seed);
        manifest["sampling"] = {
            {"mode", config.sampling.mode == SamplingSpec::Mode::Full ? "full" : "covering"},
            {"strength", config.sampling.strength},
            {"configurations", result.configs.size()},
            {"full_space", space.total_configurations()},
        };
        emit("configs.csv", configs_csv(space, result.configs), true);

        // Campaign. Trace chunks land in per-config slots, so worker threads
        // never contend and the concatenation order is deterministic.
        std::vector<std::string> trace_chunks(result.configs.size());
        TraceSink sink;
        if (config.write_traces) {
            sink = [&](std::size_t index, const Configuration&, const TraceSet& set) {
                trace_chunks[index] = traces_csv_rows(config, case_study, set);
            };
        }
        CampaignOptions options;
        options.horizon = config.horizon;
        options.limits = config.monte_carlo;
        options.global_seed = seed;
        options.jobs = overrides.jobs;
        result.campaign = run_campaign(result.configs, case_study.make_environment_factory(space),
                                       case_study.make_agent_factory(space),
                                       make_long_term_metric(config.metrics[0].criterion,
                                                             config.metrics[0].mode),
                                       build_campaign_metrics(config, case_study), options, sink);

        if (config.write_traces) {
            std::string traces = traces_csv_header(config, case_study);
            for (const auto& chunk : trace_chunks) {
                traces += chunk;
            }
            emit("traces.csv", traces, true);
        } else {
            result.notes.push_back("traces: skipped (outputs.traces = false)");
        }
        emit("campaign.csv", campaign_csv(space, config, result.campaign), true);

        json failures = json::array();
        for (const auto& outcome : result.campaign.outcomes) {
            if (outcome.error) {
                failures.push_back({{"config_id", outcome.config_id}, {"error", *outcome.error}});
            }
        }
        manifest["failures"] = failures;

        result.report = sensitivity_from_outcomes(space, result.campaign.outcomes,
                                                  config.metrics[0].id());
        emit("sensitivity_report.json", sensitivity_report_json(*result.report), false);
        emit("sensitivity_report.md", sensitivity_report_markdown(*result.report), false);

        if (config.objectives.empty()) {
            result.notes.push_back("pareto: skipped (no objectives configured)");
        } else {
            result.front = front_from_outcomes(config, result.campaign.outcomes);
            emit("pareto.csv", pareto_csv(space, config, *result.front), true);
            emit("pareto.dat", pareto_dat(config, *result.front), false);
        }

        finalize_manifest(failures.empty() ? "ok" : "ok_with_config_failures", "");
    } catch (const std::exception& e) {
        result.notes.push_back("pipeline aborted: partial outputs");
        finalize_manifest("failed", e.what());
        throw;
    }
    return result;
}

}  // namespace fairloop
