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

#include <complex>
#include <cstddef>
#include <vector>

#include "noisepulse/types.hpp"

namespace noisepulse {

// One-sided power spectral density, mV^2/Hz per bin. Frequencies run from
// 0 to sample_rate/2 inclusive; sum(power) * (fs/window_length) recovers
// the signal variance up to windowing bias (Parseval-consistent scaling).
struct PsdEstimate {
    std::vector<double> frequencies; // Hz
    std::vector<double> power;       // mV^2/Hz
    std::size_t window_length = 0;
    double overlap = 0.0;
};

inline constexpr std::size_t kDefaultPsdWindow = 512;
inline constexpr double kDefaultPsdOverlap = 0.5;

// Discrete Fourier transform. Radix-2 in place when the size is a power
// of two, direct evaluation otherwise (the slow path exists for odd test
// sizes, not for production use).
std::vector<std::complex<double>> fourier_transform(
    const std::vector<std::complex<double>>& x);

// Welch's averaged-periodogram PSD with a periodic Hann window. The
// defaults (512-sample windows, 50% overlap) give 8 averages over a 10 s
// segment at 250 Hz. Segments are not detrended.
//
// Throws InsufficientDataError when the signal is shorter than one
// window, ParameterError for overlap outside [0, 1) or a window shorter
// than 2 samples.
PsdEstimate welch_psd(const EcgSignal& signal,
                      std::size_t window_length = kDefaultPsdWindow,
                      double overlap = kDefaultPsdOverlap);

} // namespace noisepulse
