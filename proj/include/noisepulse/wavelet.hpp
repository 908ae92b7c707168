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
#include <vector>

// Multilevel Daubechies-4 decomposition. Conventions, which golden tests
// depend on:
//
//   - Half-sample symmetric extension, 7 samples per side: sample -1
//     mirrors sample 0, sample n mirrors sample n-1.
//   - Analysis correlates the extended signal with the filters and keeps
//     even offsets, giving ceil((n + 7) / 2) coefficients per subband.
//   - The high-pass filter is the alternating-sign reversal of the
//     low-pass: g[m] = (-1)^m h[7-m].
//
// This extension makes the coefficient frame slightly redundant, so the
// transform of an arbitrary signal stores marginally more than its
// energy; reconstruction is still exact, and energy is conserved
// whenever the borders are quiet (see the energy test).

namespace noisepulse {

inline constexpr int kWaveletLevels = 5;
inline constexpr std::size_t kWaveletFilterLength = 8;
inline constexpr std::size_t kWaveletFeatureCount = 12;

// db4 scaling coefficients in natural order; sum sqrt(2), unit norm.
extern const std::array<double, kWaveletFilterLength> kDb4LowPass;

struct SubbandSet {
    std::vector<std::vector<double>> details; // details[0] = d1 (finest)
    std::vector<double> approx;               // a5
    std::size_t input_length = 0;             // needed to invert the ceil()
};

// Throws ParameterError for levels < 1, InsufficientDataError when the
// input is shorter than 2^levels or than one filter length.
SubbandSet dwt(const std::vector<double>& samples, int levels = kWaveletLevels);

// Exact inverse of dwt (up to roundoff). Throws ParameterError when the
// subband layout is inconsistent with input_length.
std::vector<double> idwt(const SubbandSet& subbands);

// Two statistics per subband in the order [d1, d2, d3, d4, d5, a5]:
// log(1 + energy), then coefficient variance normalized by the total
// energy over all six subbands. All zeros when the subbands are silent.
std::array<double, kWaveletFeatureCount> wavelet_features(const SubbandSet& subbands);

} // namespace noisepulse
