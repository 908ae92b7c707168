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

#include "noisepulse/puf.hpp"

#include <cmath>
#include <string>

#include "noisepulse/errors.hpp"
#include "noisepulse/stream_tags.hpp"

namespace noisepulse {

RoDevice sample_device(const PufPopulationParams& params,
                       std::size_t device_index, std::uint64_t seed)
{
    if (params.nominal_freq_hz <= 0.0)
        throw ParameterError("sample_device: nominal_freq_hz must be positive");
    if (params.sigma_process_hz < 0.0 || params.sigma_meas_hz < 0.0)
        throw ParameterError("sample_device: sigma must be non-negative");

    Rng rng(derive_stream(seed, stream_tags::kPufDevice, device_index));
    RoDevice d;
    d.device_id = device_index;
    // Fixed draw order (offsets, then temperature, then voltage) so a
    // device is a pure function of (seed, index) across versions.
    for (std::size_t i = 0; i < kNumOscillators; ++i)
        d.base_freq_hz[i] =
            params.nominal_freq_hz + params.sigma_process_hz * rng.next_gaussian();
    for (std::size_t i = 0; i < kNumOscillators; ++i)
        d.temp_coeff_hz_per_c[i] =
            params.temp_coeff_mean_hz_per_c *
            (1.0 + params.temp_coeff_spread * rng.next_gaussian());
    for (std::size_t i = 0; i < kNumOscillators; ++i)
        d.volt_coeff_hz_per_vfrac[i] =
            params.volt_coeff_mean_hz_per_vfrac *
            (1.0 + params.volt_coeff_spread * rng.next_gaussian());
    return d;
}

RawResponse measure_response(const RoDevice& device, const EnvCondition& env,
                             double sigma_meas_hz, Rng& rng)
{
    if (sigma_meas_hz < 0.0)
        throw ParameterError("measure_response: sigma_meas_hz must be non-negative");

    std::array<double, kNumOscillators> freq;
    for (std::size_t i = 0; i < kNumOscillators; ++i) {
        double f = device.base_freq_hz[i] +
                   device.temp_coeff_hz_per_c[i] * env.temp_delta_c +
                   device.volt_coeff_hz_per_vfrac[i] * env.volt_delta_frac;
        if (sigma_meas_hz > 0.0)
            f += sigma_meas_hz * rng.next_gaussian();
        if (f <= 0.0)
            throw ParameterError(
                "measure_response: oscillator " + std::to_string(i) +
                " frequency is not positive; population parameters are "
                "inconsistent with this environment");
        freq[i] = f;
    }

    RawResponse r;
    r.device_id = device.device_id;
    r.env = env;
    r.bits.resize(kResponseBits);
    for (std::size_t i = 0; i < kResponseBits; ++i)
        r.bits[i] = freq[i] > freq[i + 1] ? 1 : 0;
    return r;
}

RawResponse nominal_response(const RoDevice& device)
{
    Rng unused(0);
    return measure_response(device, EnvCondition{}, 0.0, unused);
}

double fractional_hamming(const std::vector<std::uint8_t>& a,
                          const std::vector<std::uint8_t>& b)
{
    if (a.size() != b.size())
        throw ParameterError("fractional_hamming: length mismatch (" +
                             std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");
    if (a.empty())
        throw ParameterError("fractional_hamming: empty input");

    std::size_t differing = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        differing += (a[i] != 0) != (b[i] != 0);
    return static_cast<double>(differing) / static_cast<double>(a.size());
}

double uniqueness(const std::vector<RoDevice>& devices)
{
    if (devices.size() < 2)
        throw InsufficientDataError("uniqueness: need at least 2 devices");

    std::vector<RawResponse> responses;
    responses.reserve(devices.size());
    for (const RoDevice& d : devices)
        responses.push_back(nominal_response(d));

    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < responses.size(); ++i)
        for (std::size_t j = i + 1; j < responses.size(); ++j) {
            sum += fractional_hamming(responses[i].bits, responses[j].bits);
            ++pairs;
        }
    return sum / static_cast<double>(pairs);
}

double uniqueness_subsampled(const std::vector<RoDevice>& devices,
                             std::size_t n_pairs, std::uint64_t seed)
{
    if (devices.size() < 2)
        throw InsufficientDataError("uniqueness_subsampled: need at least 2 devices");
    if (n_pairs == 0)
        throw ParameterError("uniqueness_subsampled: n_pairs must be positive");

    std::vector<RawResponse> responses;
    responses.reserve(devices.size());
    for (const RoDevice& d : devices)
        responses.push_back(nominal_response(d));

    Rng rng(seed);
    double sum = 0.0;
    for (std::size_t p = 0; p < n_pairs; ++p) {
        const std::uint64_t i = rng.next_below(devices.size());
        std::uint64_t j = rng.next_below(devices.size() - 1);
        if (j >= i)
            ++j;
        sum += fractional_hamming(responses[i].bits, responses[j].bits);
    }
    return sum / static_cast<double>(n_pairs);
}

ReliabilityResult reliability(const RoDevice& device,
                              const PufPopulationParams& params,
                              const EnvEnvelope& envelope,
                              std::size_t n_trials, Rng& rng)
{
    if (n_trials < 2)
        throw ParameterError("reliability: need at least 2 trials");
    if (envelope.temp_range_c < 0.0 || envelope.volt_range_frac < 0.0)
        throw ParameterError("reliability: envelope ranges must be non-negative");

    const RawResponse reference = nominal_response(device);

    std::vector<std::uint8_t> always_matches(kResponseBits, 1);
    double ber_sum = 0.0;
    for (std::size_t t = 0; t < n_trials; ++t) {
        EnvCondition env;
        env.temp_delta_c =
            rng.uniform(-envelope.temp_range_c, envelope.temp_range_c);
        env.volt_delta_frac =
            rng.uniform(-envelope.volt_range_frac, envelope.volt_range_frac);
        const RawResponse trial =
            measure_response(device, env, params.sigma_meas_hz, rng);
        ber_sum += fractional_hamming(reference.bits, trial.bits);
        for (std::size_t i = 0; i < kResponseBits; ++i)
            if (trial.bits[i] != reference.bits[i])
                always_matches[i] = 0;
    }

    ReliabilityResult out;
    out.intra_ber = ber_sum / static_cast<double>(n_trials);
    std::size_t stable = 0;
    for (std::uint8_t m : always_matches)
        stable += m;
    out.bit_stability = static_cast<double>(stable) / kResponseBits;
    return out;
}

std::string bits_to_hex(const std::vector<std::uint8_t>& bits)
{
    static const char* digits = "0123456789ABCDEF";
    std::string out;
    out.reserve((bits.size() + 3) / 4);
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        unsigned nibble = 0;
        for (std::size_t b = 0; b < 4; ++b) {
            nibble <<= 1;
            if (i + b < bits.size() && bits[i + b] != 0)
                nibble |= 1;
        }
        out.push_back(digits[nibble]);
    }
    return out;
}

} // namespace noisepulse
