// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include "fairloop/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace fairloop {
namespace csv {

std::string real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string integer(std::int64_t value) {
    return std::to_string(value);
}

std::string row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i].find_first_of(",\n\r") != std::string::npos) {
            throw std::invalid_argument("CSV field contains a delimiter: " + fields[i]);
        }
        if (i > 0) {
            out += ',';
        }
        out += fields[i];
    }
    out += '\n';
    return out;
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else if (c != '\n' && c != '\r') {
            current += c;
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

}  // namespace csv
}  // namespace fairloop
