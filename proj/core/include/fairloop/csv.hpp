// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fairloop {
namespace csv {

/// Real number with 17 significant digits: lossless double round-trips.
std::string real(double value);

std::string integer(std::int64_t value);

/// Joins fields with commas and terminates with LF. Fields must not contain
/// commas or line breaks (enforced).
std::string row(const std::vector<std::string>& fields);

/// Splits one CSV line of the dialect written by row().
std::vector<std::string> split_row(const std::string& line);

}  // namespace csv
}  // namespace fairloop
