// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "fairloop/covering.hpp"
#include "fairloop/rng.hpp"

using namespace fairloop;

namespace {

ParameterDef binary_param(const std::string& name) {
    ParameterDef def;
    def.name = name;
    def.values = {ParamValue{0.0}, ParamValue{1.0}};
    return def;
}

ConfigSpace binary_space(int n) {
    std::vector<ParameterDef> params;
    for (int i = 0; i < n; ++i) {
        params.push_back(binary_param("p" + std::to_string(i)));
    }
    return ConfigSpace(std::move(params));
}

// Brute-force pair-coverage check, independent of verify_coverage.
bool covers_all_pairs(const std::vector<Configuration>& configs, const ConfigSpace& space) {
    const int n = static_cast<int>(space.parameter_count());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int vi = 0; vi < static_cast<int>(space.parameters()[i].values.size()); ++vi) {
                for (int vj = 0; vj < static_cast<int>(space.parameters()[j].values.size()); ++vj) {
                    bool found = false;
                    for (const auto& c : configs) {
                        if (c.assignments[i] == vi && c.assignments[j] == vj) {
                            found = true;
                            break;
                        }
                    }
                    if (!found) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

ConfigSpace random_space(RngStream& rng, int max_params, int max_values) {
    const int n = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_params - 1)));
    std::vector<ParameterDef> params;
    for (int i = 0; i < n; ++i) {
        const int values = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_values - 1)));
        ParameterDef def;
        def.name = "p" + std::to_string(i);
        for (int v = 0; v < values; ++v) {
            def.values.emplace_back(static_cast<double>(v));
        }
        params.push_back(std::move(def));
    }
    return ConfigSpace(std::move(params));
}

}  // namespace

TEST_CASE("covering array: ten binary parameters at g=2 stay small") {
    const auto space = binary_space(10);
    const auto configs = sample_covering_array(space, 2, 1);
    CHECK(configs.size() <= 20);
    CHECK(covers_all_pairs(configs, space));
    CHECK(verify_coverage(configs, space, 2).empty());
}

TEST_CASE("covering array: strength = parameter count returns the full enumeration") {
    const auto space = binary_space(3);
    const auto configs = sample_covering_array(space, 3, 7);
    const auto full = enumerate_configs(space);
    REQUIRE(configs.size() == full.size());
    for (std::size_t i = 0; i < full.size(); ++i) {
        CHECK(configs[i].id == full[i].id);
    }
}

TEST_CASE("covering array: 3 binary parameters at g=2 verified pair-complete") {
    const auto space = binary_space(3);
    const auto configs = sample_covering_array(space, 2, 3);
    CHECK(configs.size() <= space.total_configurations());
    CHECK(covers_all_pairs(configs, space));
    CHECK(verify_coverage(configs, space, 2).empty());
}

TEST_CASE("covering array: deterministic for a fixed seed") {
    const auto space = binary_space(6);
    const auto a = sample_covering_array(space, 2, 11);
    const auto b = sample_covering_array(space, 2, 11);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
    }
}

TEST_CASE("covering array: strength out of range is rejected") {
    const auto space = binary_space(3);
    CHECK_THROWS_AS(sample_covering_array(space, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(sample_covering_array(space, 4, 0), std::invalid_argument);
}

TEST_CASE("verify_coverage: the half array misses the odd-parity triples") {
    const auto space = binary_space(3);
    // {000, 011, 101, 110}: every pair covered, no odd-parity triple.
    std::vector<Configuration> configs;
    for (const std::vector<int> row : {std::vector<int>{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}) {
        configs.push_back(Configuration{config_id_from_assignments(space, row), row});
    }
    CHECK(verify_coverage(configs, space, 2).empty());

    const auto missing = verify_coverage(configs, space, 3);
    REQUIRE(missing.size() == 4);
    std::set<std::vector<int>> missing_rows;
    for (const auto& t : missing) {
        REQUIRE(t.param_indices == std::vector<int>{0, 1, 2});
        missing_rows.insert(t.value_indices);
    }
    const std::set<std::vector<int>> expected = {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}};
    CHECK(missing_rows == expected);
}

TEST_CASE("verify_coverage: full enumeration covers every strength") {
    RngStream rng(99);
    const auto space = random_space(rng, 5, 4);
    const auto full = enumerate_configs(space);
    for (int g = 1; g <= static_cast<int>(space.parameter_count()); ++g) {
        CHECK(verify_coverage(full, space, g).empty());
    }
}

TEST_CASE("property: sampled arrays cover all tuples over random spaces") {
    RngStream rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const auto space = random_space(rng, 8, 4);
        for (int g : {2, 3}) {
            if (g > static_cast<int>(space.parameter_count())) {
                continue;
            }
            const auto configs = sample_covering_array(space, g, rng.next_u64());
            CAPTURE(trial);
            CAPTURE(g);
            REQUIRE(verify_coverage(configs, space, g).empty());
            REQUIRE(configs.size() <= space.total_configurations());
        }
    }
}
