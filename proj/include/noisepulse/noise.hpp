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

#include "noisepulse/types.hpp"

// White Gaussian sensor-noise injection, SNR accounting, and the
// zero-phase band-pass that serves as the conventional-filtering
// comparison arm.

namespace noisepulse {

// Operating band for injected noise, in mV of standard deviation. The
// calibration routine clamps into this band; direct add_noise calls may
// use any nonnegative std.
inline constexpr double kNoiseStdMin = 0.1;
inline constexpr double kNoiseStdMax = 1.0;

struct NoiseSpec {
    double mean = 0.0;    // mV; experiments keep this at 0
    double std_dev = 0.0; // mV
    std::uint64_t seed = 0;
    // Set by calibrate_noise_for_snr when the requested SNR needed a std
    // outside [kNoiseStdMin, kNoiseStdMax] and the value was clamped.
    bool clamped = false;

    void validate() const; // throws ParameterError
};

// Adds i.i.d. Gaussian noise to every sample. Each sample draws from its
// own counter-derived stream, so sample i gets the same noise regardless
// of signal length or evaluation order. Annotations are copied unchanged.
EcgSignal add_noise(const EcgSignal& signal, const NoiseSpec& spec);

// 10*log10(P_clean / P_residual) with P the mean square. Throws
// ParameterError on length or rate mismatch, on a zero-power clean
// signal, or when noisy == clean (zero residual leaves SNR undefined).
double snr_db(const EcgSignal& clean, const EcgSignal& noisy);

// Solves P_signal / std^2 = 10^(target/10) for std, then clamps into
// [kNoiseStdMin, kNoiseStdMax], flagging the result when clamping moved
// it. The returned spec has mean 0 and seed 0; callers assign the seed.
// Target must lie in [0, 60] dB and the signal must have nonzero power.
NoiseSpec calibrate_noise_for_snr(const EcgSignal& signal, double target_db);

// Zero-phase 0.5-40 Hz band-pass (4th-order Butterworth prototype run
// forward-backward), the standard clinical monitoring band. Annotations
// pass through untouched. Throws InsufficientDataError for signals too
// short to pad (3x the filter order).
EcgSignal baseline_filter(const EcgSignal& signal);

} // namespace noisepulse
