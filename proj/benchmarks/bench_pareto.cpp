// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "fairloop/pareto.hpp"
#include "fairloop/rng.hpp"

namespace {

void BM_ParetoFront(benchmark::State& state) {
    using namespace fairloop;
    const int n = static_cast<int>(state.range(0));
    RngStream rng(9);
    std::vector<ParetoPoint> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        points.push_back({static_cast<std::uint64_t>(i),
                          {rng.next_double(), rng.next_double(), rng.next_double()}});
    }
    const std::vector<ObjectiveSpec> specs = {{"f1", Direction::Minimize},
                                              {"f2", Direction::Minimize},
                                              {"f3", Direction::Maximize}};
    for (auto _ : state) {
        auto front = pareto_front(points, specs);
        benchmark::DoNotOptimize(front);
    }
}
BENCHMARK(BM_ParetoFront)->Arg(200)->Arg(1000);

}  // namespace
