// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace fairloop {

inline constexpr const char* kToolName = "fairloop";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace fairloop
