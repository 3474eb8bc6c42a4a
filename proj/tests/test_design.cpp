// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <stdexcept>
#include <cmath>

#include "fairloop/design.hpp"
#include "fairloop/rng.hpp"

using namespace fairloop;

namespace {

ParameterDef numeric_param(std::string name, std::vector<double> values) {
    ParameterDef def;
    def.name = std::move(name);
    for (double v : values) {
        def.values.emplace_back(v);
    }
    return def;
}

ParameterDef label_param(std::string name, std::vector<std::string> values) {
    ParameterDef def;
    def.name = std::move(name);
    for (auto& v : values) {
        def.values.emplace_back(std::move(v));
    }
    return def;
}

void check_standardized(const DesignMatrix& design) {
    for (std::size_t c = 0; c < design.values.size(); ++c) {
        const auto& col = design.values[c];
        double mean = 0.0;
        for (double v : col) {
            mean += v;
        }
        mean /= static_cast<double>(col.size());
        double ss = 0.0;
        for (double v : col) {
            ss += (v - mean) * (v - mean);
        }
        const double std_dev = std::sqrt(ss / static_cast<double>(col.size() - 1));
        CAPTURE(c);
        REQUIRE(std::abs(mean) < 1e-9);
        REQUIRE(std::abs(std_dev - 1.0) < 1e-9);
    }
}

}  // namespace

TEST_CASE("encode_design: numeric z-scores use the sample std") {
    const ConfigSpace space({numeric_param("x", {1, 2, 3})});
    const auto configs = enumerate_configs(space);
    const DesignMatrix design = encode_design(space, configs, {10.0, 20.0, 30.0});
    REQUIRE(design.values.size() == 1);
    CHECK(design.values[0][0] == doctest::Approx(-1.0));
    CHECK(design.values[0][1] == doctest::Approx(0.0));
    CHECK(design.values[0][2] == doctest::Approx(1.0));
}

TEST_CASE("encode_design: binary categorical yields one dummy, reference first-listed") {
    const ConfigSpace space({label_param("agent", {"max-util", "eq-op"}),
                             numeric_param("u", {-3, -4})});
    const auto configs = enumerate_configs(space);
    const DesignMatrix design = encode_design(space, configs, {1.0, 2.0, 3.0, 5.0});

    // Columns: agent dummy (eq-op), u, interaction.
    REQUIRE(design.columns.size() == 3);
    CHECK(design.columns[0].term.kind == TermKind::Main);
    CHECK(design.columns[0].dummy_label == "eq-op");
    CHECK(design.columns[1].dummy_label.empty());
    CHECK(design.columns[2].term.kind == TermKind::Interaction);
    check_standardized(design);
}

TEST_CASE("encode_design: constant parameter is dropped and recorded") {
    const ConfigSpace space({numeric_param("x", {1, 2}), numeric_param("fixed", {7})});
    const auto configs = enumerate_configs(space);
    const DesignMatrix design = encode_design(space, configs, {0.0, 1.0});
    REQUIRE(design.values.size() == 1);  // only x remains, no interactions left
    REQUIRE(design.dropped_columns.size() == 1);
    CHECK(design.dropped_columns[0] == "fixed: constant");
}

TEST_CASE("encode_design: interaction columns are products, re-standardized") {
    const ConfigSpace space({numeric_param("x", {0, 1}), numeric_param("y", {0, 1})});
    const auto configs = enumerate_configs(space);
    const DesignMatrix design = encode_design(space, configs, {0.0, 1.0, 2.0, 3.0});
    REQUIRE(design.columns.size() == 3);
    check_standardized(design);

    // The raw product of standardized mains for the 2x2 grid is
    // (+1,-1,-1,+1)/..., so the re-standardized interaction has that shape.
    const auto& inter = design.values[2];
    CHECK(inter[0] == doctest::Approx(inter[3]));
    CHECK(inter[1] == doctest::Approx(inter[2]));
    CHECK(inter[0] == doctest::Approx(-inter[1]));
}

TEST_CASE("encode_design: dummies of one parameter never interact with each other") {
    const ConfigSpace space({label_param("mode", {"expected", "normal", "aggressive"}),
                             numeric_param("x", {0, 1})});
    const auto configs = enumerate_configs(space);
    std::vector<double> responses;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        responses.push_back(static_cast<double>(i));
    }
    const DesignMatrix design = encode_design(space, configs, responses);
    // Mains: 2 mode dummies + x = 3. Interactions: (mode dummy, x) * 2.
    REQUIRE(design.columns.size() == 5);
    int interactions = 0;
    for (const auto& col : design.columns) {
        if (col.term.kind == TermKind::Interaction) {
            ++interactions;
            CHECK(col.term.param_a == 0);
            CHECK(col.term.param_b == 1);
        }
    }
    CHECK(interactions == 2);
}

TEST_CASE("encode_design: constant response proceeds with the flag set") {
    const ConfigSpace space({numeric_param("x", {1, 2})});
    const auto configs = enumerate_configs(space);
    const DesignMatrix design = encode_design(space, configs, {4.0, 4.0});
    CHECK(design.response_constant);
}

TEST_CASE("encode_design: input validation") {
    const ConfigSpace space({numeric_param("x", {1, 2})});
    const auto configs = enumerate_configs(space);
    CHECK_THROWS_AS(encode_design(space, {configs[0]}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(encode_design(space, configs, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(encode_design(space, configs, {1.0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("property: standardization invariants on random designs") {
    RngStream rng(4242);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<ParameterDef> params;
        const int n_params = 2 + static_cast<int>(rng.next_below(3));
        for (int p = 0; p < n_params; ++p) {
            const int levels = 2 + static_cast<int>(rng.next_below(3));
            if (rng.next_bernoulli(0.5)) {
                std::vector<double> values;
                for (int v = 0; v < levels; ++v) {
                    values.push_back(v * 1.5 - 1.0);
                }
                params.push_back(numeric_param("n" + std::to_string(p), values));
            } else {
                std::vector<std::string> values;
                for (int v = 0; v < levels; ++v) {
                    values.push_back("l" + std::to_string(v));
                }
                params.push_back(label_param("c" + std::to_string(p), values));
            }
        }
        const ConfigSpace space(std::move(params));
        const auto configs = enumerate_configs(space);
        std::vector<double> responses;
        for (std::size_t i = 0; i < configs.size(); ++i) {
            responses.push_back(rng.next_normal(0.0, 1.0));
        }
        const DesignMatrix design = encode_design(space, configs, responses);
        check_standardized(design);
    }
}
