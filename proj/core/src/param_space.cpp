// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include "fairloop/param_space.hpp"

#include <cstdio>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace fairloop {

bool param_value_equal(const ParamValue& a, const ParamValue& b) {
    return a == b;
}

std::string param_value_to_string(const ParamValue& v) {
    if (const auto* s = std::get_if<std::string>(&v)) {
        return *s;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(v));
    return buf;
}

bool ParameterDef::is_categorical() const {
    return !values.empty() && std::holds_alternative<std::string>(values.front());
}

ConfigSpace::ConfigSpace(std::vector<ParameterDef> parameters) : parameters_(std::move(parameters)) {
    std::unordered_set<std::string> names;
    for (const auto& p : parameters_) {
        if (p.name.empty()) {
            throw std::invalid_argument("parameter with empty name");
        }
        if (!names.insert(p.name).second) {
            throw std::invalid_argument("duplicate parameter name: " + p.name);
        }
        if (p.values.empty()) {
            throw std::invalid_argument("parameter '" + p.name + "' has no values");
        }
        const bool categorical = std::holds_alternative<std::string>(p.values.front());
        for (std::size_t i = 0; i < p.values.size(); ++i) {
            if (std::holds_alternative<std::string>(p.values[i]) != categorical) {
                throw std::invalid_argument("parameter '" + p.name + "' mixes numeric and categorical values");
            }
            for (std::size_t j = i + 1; j < p.values.size(); ++j) {
                if (param_value_equal(p.values[i], p.values[j])) {
                    throw std::invalid_argument("parameter '" + p.name + "' has duplicate values");
                }
            }
        }
    }
}

std::uint64_t ConfigSpace::total_configurations() const {
    std::uint64_t total = 1;
    for (const auto& p : parameters_) {
        const std::uint64_t n = p.values.size();
        if (total > std::numeric_limits<std::uint64_t>::max() / n) {
            throw std::overflow_error("configuration space too large to enumerate");
        }
        total *= n;
    }
    return total;
}

int ConfigSpace::parameter_index(const std::string& name) const {
    for (std::size_t i = 0; i < parameters_.size(); ++i) {
        if (parameters_[i].name == name) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

std::uint64_t config_id_from_assignments(const ConfigSpace& space, const std::vector<int>& assignments) {
    const auto& params = space.parameters();
    if (assignments.size() != params.size()) {
        throw std::invalid_argument("assignment count does not match parameter count");
    }
    std::uint64_t id = 0;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const auto count = static_cast<int>(params[i].values.size());
        if (assignments[i] < 0 || assignments[i] >= count) {
            throw std::invalid_argument("assignment index out of range for parameter '" + params[i].name + "'");
        }
        id = id * static_cast<std::uint64_t>(count) + static_cast<std::uint64_t>(assignments[i]);
    }
    return id;
}

std::vector<int> assignments_from_config_id(const ConfigSpace& space, std::uint64_t id) {
    const auto& params = space.parameters();
    std::vector<int> assignments(params.size(), 0);
    for (std::size_t i = params.size(); i-- > 0;) {
        const auto count = static_cast<std::uint64_t>(params[i].values.size());
        assignments[i] = static_cast<int>(id % count);
        id /= count;
    }
    if (id != 0) {
        throw std::invalid_argument("configuration id out of range");
    }
    return assignments;
}

std::vector<Configuration> enumerate_configs(const ConfigSpace& space) {
    if (space.parameters().empty()) {
        throw std::invalid_argument("empty space");
    }
    const std::uint64_t total = space.total_configurations();
    std::vector<Configuration> configs;
    configs.reserve(total);
    std::vector<int> assignments(space.parameter_count(), 0);
    for (std::uint64_t id = 0; id < total; ++id) {
        configs.push_back(Configuration{id, assignments});
        // Row-major increment: last parameter varies fastest.
        for (std::size_t i = assignments.size(); i-- > 0;) {
            if (++assignments[i] < static_cast<int>(space.parameters()[i].values.size())) {
                break;
            }
            assignments[i] = 0;
        }
    }
    return configs;
}

}  // namespace fairloop
