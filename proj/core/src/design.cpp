// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include "fairloop/design.hpp"

#include <cmath>
#include <stdexcept>

namespace fairloop {

namespace {

// Z-scores in place with sample std (divisor n-1). Returns false when the
// column is constant and therefore carries no information.
bool standardize(std::vector<double>& column) {
    const std::size_t n = column.size();
    double mean = 0.0;
    for (double v : column) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : column) {
        const double d = v - mean;
        ss += d * d;
    }
    if (ss <= 0.0 || n < 2) {
        return false;
    }
    const double std_dev = std::sqrt(ss / static_cast<double>(n - 1));
    for (double& v : column) {
        v = (v - mean) / std_dev;
    }
    return true;
}

struct EncodedMain {
    int param = 0;
    std::string dummy_label;
    std::vector<double> column;  // standardized
};

}  // namespace

std::string term_name(const TermId& term, const ConfigSpace& space) {
    const auto& params = space.parameters();
    if (term.kind == TermKind::Main) {
        return params[static_cast<std::size_t>(term.param_a)].name;
    }
    return "(" + params[static_cast<std::size_t>(term.param_a)].name + ", " +
           params[static_cast<std::size_t>(term.param_b)].name + ")";
}

DesignMatrix encode_design(const ConfigSpace& space, const std::vector<Configuration>& configs,
                           const std::vector<double>& responses) {
    if (configs.size() < 2) {
        throw std::invalid_argument("need at least 2 configurations to encode a design");
    }
    if (configs.size() != responses.size()) {
        throw std::invalid_argument("response count does not match configuration count");
    }
    for (double y : responses) {
        if (!std::isfinite(y)) {
            throw std::invalid_argument("non-finite response value");
        }
    }

    const std::size_t n = configs.size();
    DesignMatrix design;
    design.rows = n;
    design.response = responses;

    {
        double mean = 0.0;
        for (double y : responses) {
            mean += y;
        }
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (double y : responses) {
            ss += (y - mean) * (y - mean);
        }
        design.response_constant = ss <= 0.0;
    }

    // Main-effect columns first, in parameter order.
    std::vector<EncodedMain> mains;
    const auto& params = space.parameters();
    for (std::size_t p = 0; p < params.size(); ++p) {
        const auto& def = params[p];
        if (def.is_categorical()) {
            if (def.values.size() == 1) {
                design.dropped_columns.push_back(def.name + ": constant");
                continue;
            }
            // One dummy per level except the first-listed (reference) level.
            for (std::size_t level = 1; level < def.values.size(); ++level) {
                EncodedMain main;
                main.param = static_cast<int>(p);
                main.dummy_label = std::get<std::string>(def.values[level]);
                main.column.resize(n);
                for (std::size_t r = 0; r < n; ++r) {
                    main.column[r] =
                        configs[r].assignments[p] == static_cast<int>(level) ? 1.0 : 0.0;
                }
                if (!standardize(main.column)) {
                    design.dropped_columns.push_back(def.name + "[" + main.dummy_label +
                                                     "]: constant");
                    continue;
                }
                mains.push_back(std::move(main));
            }
        } else {
            EncodedMain main;
            main.param = static_cast<int>(p);
            main.column.resize(n);
            for (std::size_t r = 0; r < n; ++r) {
                main.column[r] =
                    std::get<double>(def.values[static_cast<std::size_t>(configs[r].assignments[p])]);
            }
            if (!standardize(main.column)) {
                design.dropped_columns.push_back(def.name + ": constant");
                continue;
            }
            mains.push_back(std::move(main));
        }
    }

    for (const auto& main : mains) {
        design.columns.push_back(ColumnInfo{TermId{TermKind::Main, main.param, -1}, main.dummy_label});
        design.values.push_back(main.column);
    }

    // Pairwise interactions: products of standardized mains, re-standardized.
    for (std::size_t i = 0; i < mains.size(); ++i) {
        for (std::size_t j = i + 1; j < mains.size(); ++j) {
            if (mains[i].param == mains[j].param) {
                continue;  // dummies of the same parameter do not interact
            }
            std::vector<double> column(n);
            for (std::size_t r = 0; r < n; ++r) {
                column[r] = mains[i].column[r] * mains[j].column[r];
            }
            std::string label;
            if (!mains[i].dummy_label.empty() || !mains[j].dummy_label.empty()) {
                const std::string a = mains[i].dummy_label.empty() ? "*" : mains[i].dummy_label;
                const std::string b = mains[j].dummy_label.empty() ? "*" : mains[j].dummy_label;
                label = "(" + a + ", " + b + ")";
            }
            const TermId term{TermKind::Interaction, mains[i].param, mains[j].param};
            if (!standardize(column)) {
                design.dropped_columns.push_back(term_name(term, space) +
                                                 (label.empty() ? "" : " " + label) + ": constant");
                continue;
            }
            design.columns.push_back(ColumnInfo{term, label});
            design.values.push_back(std::move(column));
        }
    }

    return design;
}

}  // namespace fairloop
