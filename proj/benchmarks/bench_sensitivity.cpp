// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "fairloop/anova.hpp"
#include "fairloop/rng.hpp"

namespace {

using namespace fairloop;

ConfigSpace bench_space() {
    std::vector<ParameterDef> params(5);
    const int sizes[5] = {2, 8, 4, 4, 3};
    for (int p = 0; p < 5; ++p) {
        params[p].name = "p" + std::to_string(p);
        for (int v = 0; v < sizes[p]; ++v) {
            params[p].values.emplace_back(static_cast<double>(v));
        }
    }
    return ConfigSpace(std::move(params));
}

void BM_EncodeFitAnova(benchmark::State& state) {
    const auto space = bench_space();
    const auto configs = enumerate_configs(space);
    RngStream rng(17);
    std::vector<double> responses;
    responses.reserve(configs.size());
    for (const auto& config : configs) {
        responses.push_back(config.assignments[0] * 0.2 + config.assignments[1] * 0.05 +
                            rng.next_normal(0.0, 0.01));
    }
    for (auto _ : state) {
        const DesignMatrix design = encode_design(space, configs, responses);
        const FitResult fit = fit_ols(design);
        const AnovaTable table = anova(design, fit, space);
        auto report = rank_terms(table);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_EncodeFitAnova);

void BM_FCdf(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        x += 0.001;
        benchmark::DoNotOptimize(f_cdf(x, 3, 40));
    }
}
BENCHMARK(BM_FCdf);

}  // namespace
