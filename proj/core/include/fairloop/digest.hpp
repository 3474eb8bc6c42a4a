// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace fairloop {

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view data);

/// Lowercase hex SHA-256 of a file's contents.
std::string sha256_file_hex(const std::filesystem::path& path);

}  // namespace fairloop
