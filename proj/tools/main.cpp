// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
//
// fairloop command-line tool: enumerate/sample configuration spaces, run
// simulation campaigns, and produce sensitivity and trade-off reports.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "fairloop/case_registry.hpp"
#include "fairloop/covering.hpp"
#include "fairloop/experiment.hpp"
#include "fairloop/pipeline.hpp"
#include "fairloop/version.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    int jobs = 1;
};

void add_common_options(CLI::App* cmd, CommonArgs& args, bool with_jobs) {
    cmd->add_option("--config", args.config_path, "Experiment config file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&args](std::uint64_t v) { args.seed = v; },
        "Override the config file's global seed");
    cmd->add_option_function<std::string>(
        "--out", [&args](const std::string& v) { args.out = v; },
        "Override the config file's output directory");
    if (with_jobs) {
        cmd->add_option("--jobs", args.jobs, "Worker threads for the campaign")
            ->check(CLI::PositiveNumber);
    }
}

fairloop::ExperimentConfig load_config(const CommonArgs& args) {
    auto config = fairloop::parse_experiment_config(fairloop::read_text_file(args.config_path));
    if (args.seed) {
        config.seed = *args.seed;
    }
    if (args.out) {
        config.output_dir = *args.out;
    }
    return config;
}

std::filesystem::path ensure_output_dir(const fairloop::ExperimentConfig& config) {
    const std::filesystem::path dir = config.output_dir;
    std::filesystem::create_directories(dir);
    return dir;
}

int cmd_enumerate(const CommonArgs& args) {
    const auto config = load_config(args);
    const auto space = fairloop::build_config_space(config);
    const auto configs = fairloop::enumerate_configs(space);
    const auto dir = ensure_output_dir(config);
    fairloop::write_text_file(dir / "configs.csv", fairloop::configs_csv(space, configs));
    std::cout << configs.size() << " configurations -> " << (dir / "configs.csv").string() << "\n";
    return 0;
}

int cmd_sample(const CommonArgs& args) {
    const auto config = load_config(args);
    if (config.sampling.mode != fairloop::SamplingSpec::Mode::Covering) {
        std::cerr << "error: config.sampling.mode is 'full'; nothing to sample\n";
        return 1;
    }
    const auto space = fairloop::build_config_space(config);
    const auto configs =
        fairloop::sample_covering_array(space, config.sampling.strength, config.seed);
    const auto missing = fairloop::verify_coverage(configs, space, config.sampling.strength);
    if (!missing.empty()) {
        std::cerr << "error: generated array misses " << missing.size() << " tuples\n";
        return 1;
    }
    const auto dir = ensure_output_dir(config);
    fairloop::write_text_file(dir / "configs.csv", fairloop::configs_csv(space, configs));
    std::cout << configs.size() << " of " << space.total_configurations()
              << " configurations cover all " << config.sampling.strength << "-way interactions -> "
              << (dir / "configs.csv").string() << "\n";
    return 0;
}

int cmd_simulate(const CommonArgs& args) {
    const auto config = load_config(args);
    const auto space = fairloop::build_config_space(config);
    const auto& case_study = fairloop::case_by_id(config.case_study);
    const auto configs = fairloop::select_configurations(config, space, config.seed);
    const auto dir = ensure_output_dir(config);
    fairloop::write_text_file(dir / "configs.csv", fairloop::configs_csv(space, configs));

    std::vector<std::string> trace_chunks(configs.size());
    fairloop::TraceSink sink;
    if (config.write_traces) {
        sink = [&](std::size_t index, const fairloop::Configuration&,
                   const fairloop::TraceSet& set) {
            trace_chunks[index] = fairloop::traces_csv_rows(config, case_study, set);
        };
    }
    fairloop::CampaignOptions options;
    options.horizon = config.horizon;
    options.limits = config.monte_carlo;
    options.global_seed = config.seed;
    options.jobs = args.jobs;
    const auto result = fairloop::run_campaign(
        configs, case_study.make_environment_factory(space), case_study.make_agent_factory(space),
        fairloop::make_long_term_metric(config.metrics[0].criterion, config.metrics[0].mode),
        fairloop::build_campaign_metrics(config, case_study), options, sink);

    if (config.write_traces) {
        std::string traces = fairloop::traces_csv_header(config, case_study);
        for (const auto& chunk : trace_chunks) {
            traces += chunk;
        }
        fairloop::write_text_file(dir / "traces.csv", traces);
    }
    fairloop::write_text_file(dir / "campaign.csv",
                              fairloop::campaign_csv(space, config, result));

    std::size_t failures = 0;
    for (const auto& outcome : result.outcomes) {
        failures += outcome.error ? 1 : 0;
    }
    std::cout << result.outcomes.size() << " configurations simulated, " << failures
              << " failures -> " << (dir / "campaign.csv").string() << "\n";
    return failures == result.outcomes.size() ? 1 : 0;
}

int cmd_analyze(const CommonArgs& args) {
    const auto config = load_config(args);
    const auto space = fairloop::build_config_space(config);
    const auto dir = ensure_output_dir(config);
    const auto table =
        fairloop::read_campaign_csv(fairloop::read_text_file(dir / "campaign.csv"), space);
    const auto report =
        fairloop::sensitivity_from_outcomes(space, table.outcomes, config.metrics[0].id());
    fairloop::write_text_file(dir / "sensitivity_report.json",
                              fairloop::sensitivity_report_json(report));
    fairloop::write_text_file(dir / "sensitivity_report.md",
                              fairloop::sensitivity_report_markdown(report));
    std::cout << "R² = " << report.r_squared << ", " << report.rows.size() << " terms -> "
              << (dir / "sensitivity_report.md").string() << "\n";
    return 0;
}

int cmd_pareto(const CommonArgs& args) {
    const auto config = load_config(args);
    if (config.objectives.empty()) {
        std::cerr << "error: config declares no objectives\n";
        return 1;
    }
    const auto space = fairloop::build_config_space(config);
    const auto dir = ensure_output_dir(config);
    const auto table =
        fairloop::read_campaign_csv(fairloop::read_text_file(dir / "campaign.csv"), space);
    const auto front = fairloop::front_from_outcomes(config, table.outcomes);
    fairloop::write_text_file(dir / "pareto.csv", fairloop::pareto_csv(space, config, front));
    fairloop::write_text_file(dir / "pareto.dat", fairloop::pareto_dat(config, front));
    std::cout << front.members.size() << " Pareto-optimal configurations -> "
              << (dir / "pareto.csv").string() << "\n";
    return 0;
}

int cmd_run(const CommonArgs& args) {
    const auto config = load_config(args);
    fairloop::PipelineOverrides overrides;
    overrides.jobs = args.jobs;
    const auto result = fairloop::run_pipeline(config, overrides);
    std::cout << "wrote " << result.files.size() << " files to " << result.output_dir.string()
              << "\n";
    for (const auto& note : result.notes) {
        std::cout << "note: " << note << "\n";
    }
    std::size_t failures = 0;
    for (const auto& outcome : result.campaign.outcomes) {
        failures += outcome.error ? 1 : 0;
    }
    if (failures > 0) {
        std::cout << failures << " configuration(s) failed; see manifest.json\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(fairloop::kToolName) +
                 " - feedback-loop fairness simulation and sensitivity analysis"};
    app.set_version_flag("--version", fairloop::kToolVersion);
    app.require_subcommand(1);

    CommonArgs args;
    int (*handler)(const CommonArgs&) = nullptr;

    auto* enumerate = app.add_subcommand("enumerate", "List the full configuration space");
    add_common_options(enumerate, args, false);
    enumerate->callback([&] { handler = cmd_enumerate; });

    auto* sample = app.add_subcommand("sample", "Generate a covering-array sample of the space");
    add_common_options(sample, args, false);
    sample->callback([&] { handler = cmd_sample; });

    auto* simulate = app.add_subcommand("simulate", "Run the Monte-Carlo campaign");
    add_common_options(simulate, args, true);
    simulate->callback([&] { handler = cmd_simulate; });

    auto* analyze = app.add_subcommand("analyze", "Sensitivity analysis of campaign results");
    add_common_options(analyze, args, false);
    analyze->callback([&] { handler = cmd_analyze; });

    auto* pareto = app.add_subcommand("pareto", "Extract the fairness-utility Pareto front");
    add_common_options(pareto, args, false);
    pareto->callback([&] { handler = cmd_pareto; });

    auto* run = app.add_subcommand("run", "Full pipeline: sample, simulate, analyze, trade-off");
    add_common_options(run, args, true);
    run->callback([&] { handler = cmd_run; });

    CLI11_PARSE(app, argc, argv);

    try {
        return handler(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
