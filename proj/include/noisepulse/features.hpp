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

#include "noisepulse/types.hpp"

// The 15-entry feature vector the classifier consumes: three RR-interval
// statistics, two QRS widths, and the detail-subband statistics of a
// 5-level db4 decomposition (the approximation pair is dropped to stay at
// 15; its energy is dominated by baseline level, the least informative
// subband for beat morphology).

namespace noisepulse {

inline constexpr std::size_t kFeatureCount = 15;

using FeatureVector = std::array<double, kFeatureCount>;

// Canonical ordering, frozen; the CSV header and the model format both
// rely on it.
extern const std::array<const char*, kFeatureCount> kFeatureNames;

struct RrStats {
    double mean_s = 0.0;
    double std_s = 0.0;
    double rmssd_s = 0.0;
};

struct QrsStats {
    double mean_s = 0.0;
    double max_s = 0.0;
};

// Slope-energy R-peak detector: zero-phase 5-15 Hz band-pass, centered
// derivative, squaring, 150 ms moving integration, adaptive signal/noise
// threshold with 200 ms refractory and a search-back pass for long gaps.
// Reported indices are refined to the raw-signal extremum within 100 ms.
// Reported peaks are strictly increasing and never closer than 200 ms.
//
// Throws InsufficientDataError for signals under 2 s or when no peak
// crosses the threshold (an all-zero signal, for instance).
std::vector<std::size_t> detect_r_peaks(const EcgSignal& signal);

// Interval statistics in seconds; std is the population form and rmssd
// the root mean square of successive interval differences. Throws
// InsufficientDataError for fewer than 3 peaks (2 intervals).
RrStats rr_features(const std::vector<std::size_t>& peaks, double sample_rate);

// Per-beat width at 10% of the R-sample amplitude, crossings searched
// within 120 ms on each side. Beats whose window leaves the signal or
// whose R sample is not positive are skipped; if every beat is skipped,
// throws InsufficientDataError.
QrsStats qrs_widths(const EcgSignal& signal, const std::vector<std::size_t>& peaks);

// Full vector in kFeatureNames order. With use_ground_truth_peaks the
// signal's stored annotations are used (ParameterError if there are
// none); otherwise detect_r_peaks runs first. Component errors propagate.
FeatureVector extract_features(const EcgSignal& signal, bool use_ground_truth_peaks);

} // namespace noisepulse
