// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "fairloop/loan.hpp"
#include "fairloop/policing.hpp"

namespace {

void BM_LoanTrace(benchmark::State& state) {
    using namespace fairloop;
    loan::LoanParams params;
    params.agent = state.range(0) == 0 ? loan::AgentPolicy::MaxUtil : loan::AgentPolicy::EqOp;
    params.bank_utility = -4.0;
    params.score_update_repay = 12.0;
    params.score_update_default = -24.0;
    params.shift_mode = loan::ShiftMode::Normal;

    const int horizon = static_cast<int>(state.range(1));
    std::uint64_t run = 0;
    for (auto _ : state) {
        loan::LoanEnvironment env(params);
        loan::LoanAgent agent(params);
        RngStream rng = derive_stream(1, 0, run++);
        Trace trace = simulate_trace(env, agent, 0, 0, horizon, rng);
        benchmark::DoNotOptimize(trace);
    }
    state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_LoanTrace)->Args({0, 50})->Args({1, 50});

void BM_PolicingTrace(benchmark::State& state) {
    using namespace fairloop;
    policing::PolicingParams params;
    params.discovery_rate_hot = 0.9;
    params.discovery_rate_other = 0.3;
    params.effect_range = 2;

    const int horizon = static_cast<int>(state.range(0));
    std::uint64_t run = 0;
    for (auto _ : state) {
        policing::PolicingEnvironment env(params);
        policing::PolicingAgent agent;
        RngStream rng = derive_stream(2, 0, run++);
        Trace trace = simulate_trace(env, agent, 0, 0, horizon, rng);
        benchmark::DoNotOptimize(trace);
    }
    state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_PolicingTrace)->Arg(60);

}  // namespace
