/*
 * Copyright 2026 The ovalue Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ovalue {

/// Every reference draw in the library comes from this engine. The
/// standard fixes the mt19937_64 output sequence, and doubles are formed
/// from the top 53 bits, so a seed reproduces the same stream on every
/// conforming platform. `kRngId` is recorded next to seeds in reports and
/// pool caches.
using Engine = std::mt19937_64;
inline constexpr std::string_view kRngId = "mt19937_64+top53";
inline constexpr std::uint64_t kDefaultSeed = 12345;

/// Uniform on [0, 1) with 2^-53 spacing.
inline double uniform01(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform on [lo, hi].
inline double uniform(Engine& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

}  // namespace ovalue
