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

#include "noisepulse/fuzzy.hpp"

#include <array>
#include <chrono>

#include "noisepulse/bch.hpp"
#include "noisepulse/errors.hpp"
#include "noisepulse/stream_tags.hpp"

namespace noisepulse {

namespace {

std::vector<std::uint8_t> secret_to_bits(std::uint64_t secret)
{
    std::vector<std::uint8_t> bits(kBchDimension);
    for (std::size_t i = 0; i < kBchDimension; ++i)
        bits[i] = static_cast<std::uint8_t>((secret >> (63 - i)) & 1);
    return bits;
}

std::uint64_t bits_to_secret(const std::vector<std::uint8_t>& bits)
{
    std::uint64_t secret = 0;
    for (std::uint8_t bit : bits)
        secret = secret << 1 | (bit != 0);
    return secret;
}

DeviceKey key_from_secret(std::uint64_t secret)
{
    std::array<std::uint8_t, 8> bytes;
    for (int i = 0; i < 8; ++i)
        bytes[i] = static_cast<std::uint8_t>(secret >> (8 * (7 - i)));
    DeviceKey key;
    key.key = sha256(bytes.data(), bytes.size());
    key.secret = secret;
    return key;
}

} // namespace

Enrollment enroll(const RoDevice& device, std::uint64_t seed)
{
    Rng rng(derive_stream(seed, stream_tags::kPufSecret, device.device_id));
    const std::uint64_t secret = rng.next_u64();

    const RawResponse reference = nominal_response(device);
    const std::vector<std::uint8_t> codeword = bch_encode(secret_to_bits(secret));

    Enrollment out;
    out.helper.device_id = device.device_id;
    out.helper.offset.resize(kResponseBits);
    for (std::size_t i = 0; i < kResponseBits; ++i)
        out.helper.offset[i] = reference.bits[i] ^ codeword[i];
    out.key = key_from_secret(secret);
    return out;
}

std::optional<ReproducedKey> recover(const HelperData& helper,
                                     const std::vector<std::uint8_t>& response_bits)
{
    if (helper.offset.size() != kResponseBits)
        throw ParameterError("recover: helper offset must be " +
                             std::to_string(kResponseBits) + " bits");
    if (response_bits.size() != kResponseBits)
        throw ParameterError("recover: response must be " +
                             std::to_string(kResponseBits) + " bits");

    std::vector<std::uint8_t> word(kResponseBits);
    for (std::size_t i = 0; i < kResponseBits; ++i)
        word[i] = response_bits[i] ^ helper.offset[i];

    const std::optional<BchDecodeResult> decoded = bch_decode(word);
    if (!decoded)
        return std::nullopt;

    ReproducedKey out;
    out.key = key_from_secret(bits_to_secret(decoded->message));
    out.n_corrected = decoded->n_corrected;
    return out;
}

std::optional<ReproducedKey> reproduce(const RoDevice& device,
                                       const HelperData& helper,
                                       const EnvCondition& env,
                                       double sigma_meas_hz, Rng& rng)
{
    const RawResponse fresh = measure_response(device, env, sigma_meas_hz, rng);
    return recover(helper, fresh.bits);
}

std::string helper_to_hex(const HelperData& helper)
{
    return bits_to_hex(helper.offset);
}

std::string key_to_hex(const DeviceKey& key)
{
    return digest_hex(key.key);
}

double keygen_latency_probe_ms(const RoDevice& device,
                               const PufPopulationParams& params,
                               const EnvCondition& env, Rng& rng)
{
    const Enrollment enrolled = enroll(device, 1);
    const auto t0 = std::chrono::steady_clock::now();
    const auto reproduced =
        reproduce(device, enrolled.helper, env, params.sigma_meas_hz, rng);
    const auto t1 = std::chrono::steady_clock::now();
    // The optional is part of the measured path; a failure still counts
    // as a timed attempt.
    (void)reproduced;
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace noisepulse
