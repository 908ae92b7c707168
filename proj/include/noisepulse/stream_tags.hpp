/*
 * Copyright 2026 The noisepulse Authors
 *
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

// Registry of substream tags for derive_stream(). One place on purpose:
// two modules must never reuse a tag, or their streams would collide for
// equal indices. Tags sit at bit 40 and up; indices stay far below that.

namespace noisepulse::stream_tags {

inline constexpr std::uint64_t kSegment = 0x01ULL << 40;
inline constexpr std::uint64_t kPopulation = 0x02ULL << 40;
inline constexpr std::uint64_t kNoise = 0x03ULL << 40;
inline constexpr std::uint64_t kSplit = 0x04ULL << 40;
inline constexpr std::uint64_t kBootstrap = 0x05ULL << 40;
inline constexpr std::uint64_t kTreeSplits = 0x06ULL << 40;
inline constexpr std::uint64_t kPufDevice = 0x07ULL << 40;
inline constexpr std::uint64_t kPufSecret = 0x08ULL << 40;
inline constexpr std::uint64_t kPufTrial = 0x09ULL << 40;
inline constexpr std::uint64_t kMlSeed = 0x0aULL << 40;

} // namespace noisepulse::stream_tags
