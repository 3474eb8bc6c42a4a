// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fairloop {

/// One admissible value of a parameter: a real level or a categorical label.
using ParamValue = std::variant<double, std::string>;

enum class ParamKind { System, Environmental };

bool param_value_equal(const ParamValue& a, const ParamValue& b);

/// Renders a value the way it appears in CSV output (reals with 17
/// significant digits, labels verbatim).
std::string param_value_to_string(const ParamValue& v);

struct ParameterDef {
    std::string name;
    ParamKind kind = ParamKind::System;
    std::vector<ParamValue> values;

    bool is_categorical() const;
    bool operator==(const ParameterDef&) const = default;
};

/// The cross product of all parameter value lists. Construction validates
/// the invariants (unique names, non-empty duplicate-free homogeneous value
/// lists) and throws std::invalid_argument on violation.
class ConfigSpace {
  public:
    explicit ConfigSpace(std::vector<ParameterDef> parameters);

    const std::vector<ParameterDef>& parameters() const { return parameters_; }
    std::size_t parameter_count() const { return parameters_.size(); }

    /// Product of per-parameter value counts.
    std::uint64_t total_configurations() const;

    int parameter_index(const std::string& name) const;  // -1 when absent

  private:
    std::vector<ParameterDef> parameters_;
};

/// One point of a ConfigSpace: a value index per parameter plus the point's
/// rank in row-major enumeration order (last parameter varies fastest).
struct Configuration {
    std::uint64_t id = 0;
    std::vector<int> assignments;

    const ParamValue& value(const ConfigSpace& space, std::size_t param) const {
        return space.parameters()[param].values[static_cast<std::size_t>(assignments[param])];
    }
};

/// Row-major rank of an assignment vector.
std::uint64_t config_id_from_assignments(const ConfigSpace& space, const std::vector<int>& assignments);

/// Inverse of config_id_from_assignments.
std::vector<int> assignments_from_config_id(const ConfigSpace& space, std::uint64_t id);

/// All configurations in row-major order; ids are 0..n-1.
std::vector<Configuration> enumerate_configs(const ConfigSpace& space);

}  // namespace fairloop
