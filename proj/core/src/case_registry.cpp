// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include "fairloop/case_registry.hpp"

#include <stdexcept>

#include "fairloop/loan.hpp"
#include "fairloop/policing.hpp"

namespace fairloop {

namespace {

std::vector<ParamValue> numeric_values(std::initializer_list<double> values) {
    std::vector<ParamValue> out;
    for (double v : values) {
        out.emplace_back(v);
    }
    return out;
}

std::vector<ParamValue> label_values(std::initializer_list<const char*> values) {
    std::vector<ParamValue> out;
    for (const char* v : values) {
        out.emplace_back(std::string(v));
    }
    return out;
}

std::vector<CaseStudy> build_cases() {
    std::vector<CaseStudy> cases;

    CaseStudy loan_case;
    loan_case.id = "loan";
    loan_case.parameters = {
        {"agent", ParamKind::System, label_values({"max-util", "eq-op"})},
        {"bank_utility", ParamKind::System, numeric_values({-10, -9, -8, -7, -6, -5, -4, -3})},
        {"score_update_repay", ParamKind::Environmental, numeric_values({8, 12, 16, 20})},
        {"score_update_default", ParamKind::Environmental, numeric_values({-40, -32, -24, -16})},
        {"shift_mode", ParamKind::Environmental, label_values({"expected", "normal", "aggressive"})},
    };
    loan_case.supported_criteria = {"dp", "eo", "mean_gap"};
    loan_case.utilities = {{"profit", UtilityAggregation::Sum},
                           {"profit_mean", UtilityAggregation::Mean}};
    loan_case.group_labels = {"a", "b"};
    cases.push_back(std::move(loan_case));

    CaseStudy policing_case;
    policing_case.id = "policing";
    policing_case.parameters = {
        {"discovery_rate_hot", ParamKind::Environmental,
         numeric_values({0.8, 0.85, 0.9, 0.95, 1.0})},
        {"discovery_rate_other", ParamKind::Environmental,
         numeric_values({0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5})},
        {"effect_range", ParamKind::Environmental, numeric_values({1, 2, 3})},
    };
    policing_case.supported_criteria = {"rpd"};
    policing_case.utilities = {{"discovered_total", UtilityAggregation::Sum},
                               {"discovery_rate", UtilityAggregation::Mean},
                               {"correct_hotspots", UtilityAggregation::Mean}};
    policing_case.group_labels = {"d0", "d1", "d2", "d3"};
    cases.push_back(std::move(policing_case));

    return cases;
}

}  // namespace

EnvironmentFactory CaseStudy::make_environment_factory(const ConfigSpace& space) const {
    if (id == "loan") {
        return loan::environment_factory(space);
    }
    if (id == "policing") {
        return policing::environment_factory(space);
    }
    throw std::invalid_argument("no environment factory for case study: " + id);
}

AgentFactory CaseStudy::make_agent_factory(const ConfigSpace& space) const {
    if (id == "loan") {
        return loan::agent_factory(space);
    }
    if (id == "policing") {
        return policing::agent_factory(space);
    }
    throw std::invalid_argument("no agent factory for case study: " + id);
}

const std::vector<CaseStudy>& registered_cases() {
    static const std::vector<CaseStudy> cases = build_cases();
    return cases;
}

const CaseStudy& case_by_id(const std::string& id) {
    for (const auto& c : registered_cases()) {
        if (c.id == id) {
            return c;
        }
    }
    throw std::invalid_argument("unknown case study: " + id);
}

}  // namespace fairloop
