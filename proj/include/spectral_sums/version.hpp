// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace spectral_sums {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kConfigSchemaVersion = 1;

}  // namespace spectral_sums
