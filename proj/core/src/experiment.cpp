// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include "fairloop/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fairloop {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw std::invalid_argument(path.empty() ? "config: " + message
                                             : "config." + path + ": " + message);
}

void reject_unknown_keys(const json& node, const std::string& path,
                         std::initializer_list<const char*> known) {
    for (const auto& item : node.items()) {
        if (std::find_if(known.begin(), known.end(), [&](const char* k) {
                return item.key() == k;
            }) == known.end()) {
            fail(path, "unknown key '" + item.key() + "'");
        }
    }
}

const json& require(const json& node, const std::string& path, const char* key) {
    const auto it = node.find(key);
    if (it == node.end()) {
        fail(path, std::string("missing required field '") + key + "'");
    }
    return *it;
}

std::string get_string(const json& node, const std::string& path) {
    if (!node.is_string()) {
        fail(path, "expected a string");
    }
    return node.get<std::string>();
}

double get_number(const json& node, const std::string& path) {
    if (!node.is_number()) {
        fail(path, "expected a number");
    }
    return node.get<double>();
}

int get_int(const json& node, const std::string& path) {
    if (!node.is_number_integer()) {
        fail(path, "expected an integer");
    }
    return node.get<int>();
}

ParamKind parse_kind(const json& node, const std::string& path) {
    const std::string kind = get_string(node, path);
    if (kind == "system") {
        return ParamKind::System;
    }
    if (kind == "environmental") {
        return ParamKind::Environmental;
    }
    fail(path, "kind must be 'system' or 'environmental', got '" + kind + "'");
}

std::vector<ParameterDef> parse_parameters(const json& node, const CaseStudy& case_study) {
    if (!node.is_array() || node.empty()) {
        fail("parameters", "expected a non-empty array");
    }
    std::vector<ParameterDef> defs;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < node.size(); ++i) {
        const std::string path = "parameters[" + std::to_string(i) + "]";
        const json& p = node[i];
        if (!p.is_object()) {
            fail(path, "expected an object");
        }
        reject_unknown_keys(p, path, {"name", "kind", "values"});
        ParameterDef def;
        def.name = get_string(require(p, path, "name"), path + ".name");
        if (!seen.insert(def.name).second) {
            fail(path + ".name", "duplicate parameter '" + def.name + "'");
        }

        const CaseParameter* declared = nullptr;
        for (const auto& cp : case_study.parameters) {
            if (cp.name == def.name) {
                declared = &cp;
                break;
            }
        }
        if (declared == nullptr) {
            fail(path + ".name", "case study '" + case_study.id + "' declares no parameter '" +
                                     def.name + "'");
        }

        def.kind = parse_kind(require(p, path, "kind"), path + ".kind");
        if (def.kind != declared->kind) {
            fail(path + ".kind", "parameter '" + def.name + "' is declared as " +
                                     (declared->kind == ParamKind::System ? "system"
                                                                          : "environmental"));
        }

        const json& values = require(p, path, "values");
        if (!values.is_array() || values.empty()) {
            fail(path + ".values", "expected a non-empty array");
        }
        for (std::size_t v = 0; v < values.size(); ++v) {
            const std::string vpath = path + ".values[" + std::to_string(v) + "]";
            ParamValue value;
            if (values[v].is_string()) {
                value = values[v].get<std::string>();
            } else if (values[v].is_number()) {
                value = values[v].get<double>();
            } else {
                fail(vpath, "expected a number or string");
            }
            const bool allowed =
                std::any_of(declared->allowed_values.begin(), declared->allowed_values.end(),
                            [&](const ParamValue& av) { return param_value_equal(av, value); });
            if (!allowed) {
                fail(vpath, "value " + param_value_to_string(value) +
                                " is not admissible for parameter '" + def.name + "'");
            }
            def.values.push_back(std::move(value));
        }
        defs.push_back(std::move(def));
    }

    for (const auto& cp : case_study.parameters) {
        if (seen.count(cp.name) == 0) {
            fail("parameters", "case study '" + case_study.id + "' requires parameter '" +
                                   cp.name + "'");
        }
    }
    return defs;
}

json value_to_json(const ParamValue& v) {
    if (const auto* s = std::get_if<std::string>(&v)) {
        return *s;
    }
    return std::get<double>(v);
}

json config_to_json(const ExperimentConfig& config) {
    json j;
    j["case_study"] = config.case_study;
    json params = json::array();
    for (const auto& p : config.parameters) {
        json jp;
        jp["name"] = p.name;
        jp["kind"] = p.kind == ParamKind::System ? "system" : "environmental";
        json values = json::array();
        for (const auto& v : p.values) {
            values.push_back(value_to_json(v));
        }
        jp["values"] = values;
        params.push_back(jp);
    }
    j["parameters"] = params;
    j["horizon"] = config.horizon;
    j["monte_carlo"] = {{"min_runs", config.monte_carlo.min_runs},
                        {"max_runs", config.monte_carlo.max_runs},
                        {"z", config.monte_carlo.z},
                        {"rel_tol", config.monte_carlo.rel_tol},
                        {"abs_floor", config.monte_carlo.abs_floor}};
    j["sampling"] = {{"mode", config.sampling.mode == SamplingSpec::Mode::Full ? "full" : "covering"},
                     {"strength", config.sampling.strength}};
    json metrics = json::array();
    for (const auto& m : config.metrics) {
        metrics.push_back({{"criterion", m.criterion}, {"mode", m.mode}});
    }
    j["metrics"] = metrics;
    j["utilities"] = config.utilities;
    json objectives = json::array();
    for (const auto& o : config.objectives) {
        objectives.push_back(
            {{"metric", o.metric_id},
             {"direction", o.direction == Direction::Minimize ? "minimize" : "maximize"}});
    }
    j["objectives"] = objectives;
    j["seed"] = config.seed;
    j["output_dir"] = config.output_dir;
    j["outputs"] = {{"traces", config.write_traces}};
    return j;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw std::invalid_argument("config: top level must be an object");
    }
    reject_unknown_keys(root, "", {"case_study", "parameters", "horizon", "monte_carlo", "sampling",
                                   "metrics", "utilities", "objectives", "seed", "output_dir",
                                   "outputs"});

    ExperimentConfig config;
    config.case_study = get_string(require(root, "", "case_study"), "case_study");
    const CaseStudy* case_study = nullptr;
    try {
        case_study = &case_by_id(config.case_study);
    } catch (const std::exception&) {
        fail("case_study", "unknown case study '" + config.case_study + "'");
    }

    config.parameters = parse_parameters(require(root, "", "parameters"), *case_study);

    config.horizon = get_int(require(root, "", "horizon"), "horizon");
    if (config.horizon < 1) {
        fail("horizon", "must be at least 1");
    }

    if (const auto it = root.find("monte_carlo"); it != root.end()) {
        const std::string path = "monte_carlo";
        reject_unknown_keys(*it, path, {"min_runs", "max_runs", "z", "rel_tol", "abs_floor"});
        auto& mc = config.monte_carlo;
        if (const auto f = it->find("min_runs"); f != it->end()) {
            mc.min_runs = get_int(*f, path + ".min_runs");
        }
        if (const auto f = it->find("max_runs"); f != it->end()) {
            mc.max_runs = get_int(*f, path + ".max_runs");
        }
        if (const auto f = it->find("z"); f != it->end()) {
            mc.z = get_number(*f, path + ".z");
        }
        if (const auto f = it->find("rel_tol"); f != it->end()) {
            mc.rel_tol = get_number(*f, path + ".rel_tol");
        }
        if (const auto f = it->find("abs_floor"); f != it->end()) {
            mc.abs_floor = get_number(*f, path + ".abs_floor");
        }
        if (mc.min_runs < 2) {
            fail(path + ".min_runs", "must be at least 2");
        }
        if (mc.max_runs < mc.min_runs) {
            fail(path + ".max_runs", "must be at least min_runs");
        }
        if (mc.z <= 0.0) {
            fail(path + ".z", "must be positive");
        }
        if (mc.rel_tol <= 0.0) {
            fail(path + ".rel_tol", "must be positive");
        }
        if (mc.abs_floor < 0.0) {
            fail(path + ".abs_floor", "must be non-negative");
        }
    }

    if (const auto it = root.find("sampling"); it != root.end()) {
        const std::string path = "sampling";
        reject_unknown_keys(*it, path, {"mode", "strength"});
        const std::string mode = get_string(require(*it, path, "mode"), path + ".mode");
        if (mode == "full") {
            config.sampling.mode = SamplingSpec::Mode::Full;
        } else if (mode == "covering") {
            config.sampling.mode = SamplingSpec::Mode::Covering;
        } else {
            fail(path + ".mode", "must be 'full' or 'covering'");
        }
        if (const auto f = it->find("strength"); f != it->end()) {
            config.sampling.strength = get_int(*f, path + ".strength");
        }
        if (config.sampling.mode == SamplingSpec::Mode::Covering &&
            (config.sampling.strength < 2 ||
             config.sampling.strength > static_cast<int>(config.parameters.size()))) {
            fail(path + ".strength", "strength out of range");
        }
    }

    {
        const json& metrics = require(root, "", "metrics");
        if (!metrics.is_array() || metrics.empty()) {
            fail("metrics", "expected a non-empty array");
        }
        std::set<std::string> ids;
        for (std::size_t i = 0; i < metrics.size(); ++i) {
            const std::string path = "metrics[" + std::to_string(i) + "]";
            reject_unknown_keys(metrics[i], path, {"criterion", "mode"});
            MetricSpec spec;
            spec.criterion = get_string(require(metrics[i], path, "criterion"), path + ".criterion");
            spec.mode = get_string(require(metrics[i], path, "mode"), path + ".mode");
            if (std::find(case_study->supported_criteria.begin(),
                          case_study->supported_criteria.end(),
                          spec.criterion) == case_study->supported_criteria.end()) {
                fail(path + ".criterion", "criterion '" + spec.criterion +
                                              "' is not supported by case study '" +
                                              case_study->id + "'");
            }
            if (spec.mode != "avg_inc" && spec.mode != "max_inc") {
                fail(path + ".mode", "must be 'avg_inc' or 'max_inc'");
            }
            if (!ids.insert(spec.id()).second) {
                fail(path, "duplicate metric '" + spec.id() + "'");
            }
            config.metrics.push_back(std::move(spec));
        }
    }

    if (const auto it = root.find("utilities"); it != root.end()) {
        if (!it->is_array()) {
            fail("utilities", "expected an array");
        }
        std::set<std::string> seen;
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string path = "utilities[" + std::to_string(i) + "]";
            const std::string id = get_string((*it)[i], path);
            const bool known = std::any_of(case_study->utilities.begin(),
                                           case_study->utilities.end(),
                                           [&](const UtilityDef& u) { return u.id == id; });
            if (!known) {
                fail(path, "utility '" + id + "' is not provided by case study '" +
                               case_study->id + "'");
            }
            if (!seen.insert(id).second) {
                fail(path, "duplicate utility '" + id + "'");
            }
            config.utilities.push_back(id);
        }
    }

    if (const auto it = root.find("objectives"); it != root.end()) {
        if (!it->is_array()) {
            fail("objectives", "expected an array");
        }
        const auto produced = [&]() {
            std::vector<std::string> ids;
            for (const auto& m : config.metrics) {
                ids.push_back(m.id());
            }
            for (const auto& u : config.utilities) {
                ids.push_back(u);
            }
            return ids;
        }();
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string path = "objectives[" + std::to_string(i) + "]";
            reject_unknown_keys((*it)[i], path, {"metric", "direction"});
            ObjectiveSpec spec;
            spec.metric_id = get_string(require((*it)[i], path, "metric"), path + ".metric");
            if (std::find(produced.begin(), produced.end(), spec.metric_id) == produced.end()) {
                fail(path + ".metric", "metric '" + spec.metric_id +
                                           "' is not produced by this campaign");
            }
            const std::string direction =
                get_string(require((*it)[i], path, "direction"), path + ".direction");
            if (direction == "minimize") {
                spec.direction = Direction::Minimize;
            } else if (direction == "maximize") {
                spec.direction = Direction::Maximize;
            } else {
                fail(path + ".direction", "must be 'minimize' or 'maximize'");
            }
            config.objectives.push_back(std::move(spec));
        }
    }

    if (const auto it = root.find("seed"); it != root.end()) {
        if (!it->is_number_unsigned() && !it->is_number_integer()) {
            fail("seed", "expected a non-negative integer");
        }
        if (it->is_number_integer() && it->get<std::int64_t>() < 0) {
            fail("seed", "expected a non-negative integer");
        }
        config.seed = it->get<std::uint64_t>();
    }

    if (const auto it = root.find("output_dir"); it != root.end()) {
        config.output_dir = get_string(*it, "output_dir");
        if (config.output_dir.empty()) {
            fail("output_dir", "must not be empty");
        }
    }

    if (const auto it = root.find("outputs"); it != root.end()) {
        reject_unknown_keys(*it, "outputs", {"traces"});
        if (const auto f = it->find("traces"); f != it->end()) {
            if (!f->is_boolean()) {
                fail("outputs.traces", "expected a boolean");
            }
            config.write_traces = f->get<bool>();
        }
    }

    // Constructing the space re-checks the structural invariants.
    build_config_space(config);
    return config;
}

std::string serialize_experiment_config(const ExperimentConfig& config) {
    return config_to_json(config).dump(2) + "\n";
}

std::string canonical_config_json(const ExperimentConfig& config) {
    // nlohmann::json objects iterate in key order, so this dump is already
    // independent of the input file's key order. The output directory is an
    // execution detail, not part of the experiment's identity.
    json j = config_to_json(config);
    j.erase("output_dir");
    return j.dump();
}

ConfigSpace build_config_space(const ExperimentConfig& config) {
    return ConfigSpace(config.parameters);
}

std::vector<std::string> campaign_metric_ids(const ExperimentConfig& config) {
    std::vector<std::string> ids;
    for (const auto& m : config.metrics) {
        ids.push_back(m.id());
    }
    for (const auto& u : config.utilities) {
        ids.push_back(u);
    }
    return ids;
}

}  // namespace fairloop
