// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "fairloop/covering.hpp"

namespace {

fairloop::ConfigSpace loan_like_space() {
    using fairloop::ParamValue;
    std::vector<fairloop::ParameterDef> params(5);
    params[0].name = "agent";
    params[0].values = {ParamValue{std::string("a")}, ParamValue{std::string("b")}};
    params[1].name = "u";
    for (int i = 0; i < 8; ++i) {
        params[1].values.emplace_back(static_cast<double>(i));
    }
    params[2].name = "r";
    params[3].name = "d";
    for (int i = 0; i < 4; ++i) {
        params[2].values.emplace_back(static_cast<double>(i));
        params[3].values.emplace_back(static_cast<double>(i));
    }
    params[4].name = "m";
    for (int i = 0; i < 3; ++i) {
        params[4].values.emplace_back(static_cast<double>(i));
    }
    return fairloop::ConfigSpace(std::move(params));
}

void BM_CoveringArrayLoanSpace(benchmark::State& state) {
    const auto space = loan_like_space();
    const auto g = static_cast<int>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto configs = fairloop::sample_covering_array(space, g, seed++);
        benchmark::DoNotOptimize(configs);
    }
}
BENCHMARK(BM_CoveringArrayLoanSpace)->Arg(2)->Arg(3);

void BM_VerifyCoverage(benchmark::State& state) {
    const auto space = loan_like_space();
    const auto configs = fairloop::sample_covering_array(space, 2, 1);
    for (auto _ : state) {
        auto missing = fairloop::verify_coverage(configs, space, 2);
        benchmark::DoNotOptimize(missing);
    }
}
BENCHMARK(BM_VerifyCoverage);

}  // namespace
