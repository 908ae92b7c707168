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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

// FIPS 180-4 SHA-256, one-shot. Implemented locally because the key
// pipeline needs bit-exact digests without dragging in a crypto
// dependency; the test suite pins the official reference vectors.

namespace noisepulse {

using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest sha256(const std::uint8_t* data, std::size_t len);
Sha256Digest sha256(std::string_view text);

// Lowercase hex, two characters per byte.
std::string digest_hex(const Sha256Digest& digest);

} // namespace noisepulse
