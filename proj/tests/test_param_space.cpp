// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "fairloop/param_space.hpp"

using namespace fairloop;

namespace {

ParameterDef numeric_param(std::string name, std::vector<double> values,
                           ParamKind kind = ParamKind::System) {
    ParameterDef def;
    def.name = std::move(name);
    def.kind = kind;
    for (double v : values) {
        def.values.emplace_back(v);
    }
    return def;
}

ParameterDef label_param(std::string name, std::vector<std::string> values,
                         ParamKind kind = ParamKind::System) {
    ParameterDef def;
    def.name = std::move(name);
    def.kind = kind;
    for (auto& v : values) {
        def.values.emplace_back(std::move(v));
    }
    return def;
}

// The loan-lending space: agent:2 x bank-utility:8 x repay:4 x default:4 x mode:3.
ConfigSpace loan_space() {
    return ConfigSpace({
        label_param("agent", {"max-util", "eq-op"}),
        numeric_param("bank_utility", {-10, -9, -8, -7, -6, -5, -4, -3}),
        numeric_param("score_update_repay", {8, 12, 16, 20}, ParamKind::Environmental),
        numeric_param("score_update_default", {-40, -32, -24, -16}, ParamKind::Environmental),
        label_param("shift_mode", {"expected", "normal", "aggressive"}, ParamKind::Environmental),
    });
}

}  // namespace

TEST_CASE("enumerate_configs: loan-lending space has 768 configurations") {
    const auto space = loan_space();
    CHECK(space.total_configurations() == 768);
    const auto configs = enumerate_configs(space);
    CHECK(configs.size() == 768);
    for (std::size_t i = 0; i < configs.size(); ++i) {
        REQUIRE(configs[i].id == i);
    }
}

TEST_CASE("enumerate_configs: single one-value parameter yields the identity") {
    const ConfigSpace space({numeric_param("only", {42})});
    const auto configs = enumerate_configs(space);
    REQUIRE(configs.size() == 1);
    CHECK(configs[0].id == 0);
    CHECK(std::get<double>(configs[0].value(space, 0)) == 42.0);
}

TEST_CASE("enumerate_configs: 2x3x5 matches a nested-loop oracle") {
    const ConfigSpace space({
        numeric_param("p0", {0, 1}),
        numeric_param("p1", {0, 1, 2}),
        numeric_param("p2", {0, 1, 2, 3, 4}),
    });
    const auto configs = enumerate_configs(space);
    REQUIRE(configs.size() == 30);

    // Independent nested-loop enumeration, last parameter fastest.
    std::size_t i = 0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 3; ++b) {
            for (int c = 0; c < 5; ++c) {
                REQUIRE(configs[i].assignments == std::vector<int>{a, b, c});
                ++i;
            }
        }
    }
}

TEST_CASE("enumerate_configs: empty space is rejected") {
    const ConfigSpace space{std::vector<ParameterDef>{}};
    CHECK_THROWS_WITH_AS(enumerate_configs(space), "empty space", std::invalid_argument);
}

TEST_CASE("config ids and assignment vectors are a bijection") {
    const auto space = loan_space();
    const auto configs = enumerate_configs(space);
    for (const auto& config : configs) {
        CHECK(config_id_from_assignments(space, config.assignments) == config.id);
        CHECK(assignments_from_config_id(space, config.id) == config.assignments);
    }
}

TEST_CASE("ConfigSpace validation") {
    SUBCASE("duplicate parameter names") {
        CHECK_THROWS_AS(ConfigSpace({numeric_param("x", {1}), numeric_param("x", {2})}),
                        std::invalid_argument);
    }
    SUBCASE("empty value list") {
        CHECK_THROWS_AS(ConfigSpace({numeric_param("x", {})}), std::invalid_argument);
    }
    SUBCASE("duplicate values") {
        CHECK_THROWS_AS(ConfigSpace({numeric_param("x", {1, 1})}), std::invalid_argument);
    }
    SUBCASE("mixed variants") {
        ParameterDef def;
        def.name = "x";
        def.values.emplace_back(1.0);
        def.values.emplace_back(std::string("one"));
        CHECK_THROWS_AS(ConfigSpace({def}), std::invalid_argument);
    }
}

TEST_CASE("param_value_to_string renders numerics losslessly") {
    CHECK(param_value_to_string(ParamValue{-10.0}) == "-10");
    CHECK(param_value_to_string(ParamValue{0.85}) == "0.84999999999999998");
    CHECK(param_value_to_string(ParamValue{std::string("eq-op")}) == "eq-op");
}
