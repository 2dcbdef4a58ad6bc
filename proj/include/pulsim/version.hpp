// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 pulsim developers

#pragma once

namespace pulsim {

inline constexpr const char* kVersion = "0.1.0";

} // namespace pulsim
