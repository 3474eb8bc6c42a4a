// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "fairloop/sim.hpp"

namespace fairloop {

/// Canonical declaration of one case-study parameter: its name, kind, and
/// the full list of admissible values. Experiment configs may select any
/// non-empty subset of the values but must use these names exactly.
struct CaseParameter {
    std::string name;
    ParamKind kind = ParamKind::System;
    std::vector<ParamValue> allowed_values;
};

struct CaseStudy {
    std::string id;
    std::vector<CaseParameter> parameters;
    std::vector<std::string> supported_criteria;  // per-snapshot criterion ids
    std::vector<UtilityDef> utilities;
    std::vector<std::string> group_labels;

    EnvironmentFactory make_environment_factory(const ConfigSpace& space) const;
    AgentFactory make_agent_factory(const ConfigSpace& space) const;
};

/// Case studies shipped with the tool: "loan" and "policing".
const std::vector<CaseStudy>& registered_cases();

const CaseStudy& case_by_id(const std::string& id);

}  // namespace fairloop
