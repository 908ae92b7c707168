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
#include <optional>
#include <string>
#include <vector>

#include "noisepulse/puf.hpp"
#include "noisepulse/sha256.hpp"

// Code-offset fuzzy extractor: enrollment hides a fresh 64-bit secret
// behind the device's reference response (offset = R xor encode(s)),
// and reproduction recovers it from any re-measurement within the
// error-correction radius. The offset is public by design; with an
// unpredictable R it reveals nothing about the secret. The key is
// SHA-256 of the secret's 8-byte big-endian encoding, so two
// implementations agree on keys bit for bit.

namespace noisepulse {

struct HelperData {
    std::uint64_t device_id = 0;
    std::vector<std::uint8_t> offset; // kResponseBits entries of 0/1
};

struct DeviceKey {
    Sha256Digest key{};
    // Kept for test introspection; a deployment would hold only `key`
    // and must never serialize the secret.
    std::uint64_t secret = 0;
};

struct Enrollment {
    HelperData helper;
    DeviceKey key;
};

struct ReproducedKey {
    DeviceKey key;
    std::size_t n_corrected = 0;
};

// Secret drawn from a stream derived from (seed, device_id); the same
// pair re-enrolls identically, a different seed gives a fresh secret.
Enrollment enroll(const RoDevice& device, std::uint64_t seed);

// Unmasks the secret from a response that was already measured, so a
// caller can reuse one measurement for both error statistics and key
// recovery. Empty optional when the response drifted beyond the
// correction radius.
std::optional<ReproducedKey> recover(const HelperData& helper,
                                     const std::vector<std::uint8_t>& response_bits);

// Re-measures under env with the given measurement noise and unmasks
// the secret.
std::optional<ReproducedKey> reproduce(const RoDevice& device,
                                       const HelperData& helper,
                                       const EnvCondition& env,
                                       double sigma_meas_hz, Rng& rng);

// 32 uppercase hex characters (127 bits, zero-padded tail nibble).
std::string helper_to_hex(const HelperData& helper);

// 64 lowercase hex characters. Printing keys is acceptable only in a
// simulation; the docs call this out.
std::string key_to_hex(const DeviceKey& key);

// Wall-clock milliseconds for one reproduction (measure, decode, hash)
// against a ready enrollment, for budget checks.
double keygen_latency_probe_ms(const RoDevice& device,
                               const PufPopulationParams& params,
                               const EnvCondition& env, Rng& rng);

} // namespace noisepulse
