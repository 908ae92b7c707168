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
#include <vector>

#include "noisepulse/rng.hpp"

// Monte Carlo model of a ring-oscillator PUF population. Each device is
// 128 oscillators around a 100 MHz nominal; manufacturing gives every
// oscillator a frozen Gaussian frequency offset, and each oscillator
// also gets its own temperature and voltage sensitivity. A response is
// the 127 adjacent-pair comparisons f_i > f_{i+1}.
//
// Identity lives in the process offsets (megahertz scale); environment
// and measurement perturbations sit three orders of magnitude below, so
// only comparator pairs whose offset difference is tiny ever flip. The
// default sensitivities below are deliberately tight: with kilohertz
// perturbations against megahertz margins roughly half a percent of
// bits are weak, which is what keeps raw stability at the 99% level the
// downstream error-correcting stage is budgeted for. The numbers are
// model parameters, not circuit measurements, and are meant to be tuned
// through PufPopulationParams.

namespace noisepulse {

inline constexpr std::size_t kNumOscillators = 128;
inline constexpr std::size_t kResponseBits = kNumOscillators - 1;

struct PufPopulationParams {
    double nominal_freq_hz = 100e6;
    // Per-oscillator manufacturing offset: 1% of nominal.
    double sigma_process_hz = 1e6;
    // Per-measurement frequency jitter: 0.001% of nominal.
    double sigma_meas_hz = 1e3;
    // Sensitivity means; each oscillator draws its own coefficient with
    // the given relative spread, and only that spread matters for bits
    // (the common-mode part shifts both halves of every comparison).
    double temp_coeff_mean_hz_per_c = -20e3;
    double temp_coeff_spread = 0.02;
    double volt_coeff_mean_hz_per_vfrac = 500e3;
    double volt_coeff_spread = 0.02;
};

struct EnvCondition {
    double temp_delta_c = 0.0;
    double volt_delta_frac = 0.0;
};

// The operating envelope responses are specified for; reliability
// sweeps sample uniformly inside it.
struct EnvEnvelope {
    double temp_range_c = 10.0;
    double volt_range_frac = 0.05;
};

struct RoDevice {
    std::uint64_t device_id = 0;
    // Nominal plus frozen process offset, per oscillator.
    std::array<double, kNumOscillators> base_freq_hz{};
    std::array<double, kNumOscillators> temp_coeff_hz_per_c{};
    std::array<double, kNumOscillators> volt_coeff_hz_per_vfrac{};
};

struct RawResponse {
    std::uint64_t device_id = 0;
    EnvCondition env;
    std::vector<std::uint8_t> bits; // kResponseBits entries, each 0 or 1
};

struct ReliabilityResult {
    double intra_ber = 0.0;
    double bit_stability = 0.0;
};

struct PufStats {
    double uniqueness_mean_fractional_hd = 0.0;
    // Percentage-style score 100*(1 - |hd - 1/2| / (1/2)): 100 at the
    // ideal half-distance, 0 for identical or complementary populations.
    double uniqueness_score_pct = 0.0;
    double intra_device_ber = 0.0;
    double bit_stability = 0.0;
    std::size_t n_devices = 0;
    std::size_t n_trials = 0;
};

// Deterministic per (seed, device_index); the population seed alone
// defines the whole virtual wafer.
RoDevice sample_device(const PufPopulationParams& params,
                       std::size_t device_index, std::uint64_t seed);

// sigma_meas_hz = 0 reads the comparators noiselessly and leaves rng
// untouched, which is how reference responses are defined.
RawResponse measure_response(const RoDevice& device, const EnvCondition& env,
                             double sigma_meas_hz, Rng& rng);

RawResponse nominal_response(const RoDevice& device);

double fractional_hamming(const std::vector<std::uint8_t>& a,
                          const std::vector<std::uint8_t>& b);

// Mean pairwise fractional Hamming distance over all C(n,2) noiseless
// nominal responses. Identity only: no environment, no measurement
// noise.
double uniqueness(const std::vector<RoDevice>& devices);

// Estimator over n_pairs random pairs for populations where full
// enumeration is unwanted; pairs are drawn with replacement (distinct
// members per pair).
double uniqueness_subsampled(const std::vector<RoDevice>& devices,
                             std::size_t n_pairs, std::uint64_t seed);

// Re-measures the device n_trials times under environments drawn
// uniformly from the envelope, with measurement noise, against the
// noiseless nominal reference. intra_ber is the mean fractional HD;
// bit_stability the fraction of positions identical across every trial.
ReliabilityResult reliability(const RoDevice& device,
                              const PufPopulationParams& params,
                              const EnvEnvelope& envelope,
                              std::size_t n_trials, Rng& rng);

// Uppercase hex, MSB-first within each nibble; a tail shorter than four
// bits is zero-padded on the right, so 127 bits become 32 characters.
std::string bits_to_hex(const std::vector<std::uint8_t>& bits);

} // namespace noisepulse
