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
#include <vector>

#include "noisepulse/rng.hpp"
#include "noisepulse/types.hpp"

// Parametric beat-morphology generator. Beats are sums of Gaussian bumps:
// a P wave, a biphasic QRS (tall R bump plus a small negative S lobe) and
// a T wave. The three rhythm classes differ as follows:
//
//   Normal: all three waves; RR = 60/HR + Gaussian jitter.
//   PVC:    no P wave; the whole QRS time-scaled by kPvcQrsScale; RR
//           alternates premature (kPvcPrematureFactor) and compensatory-
//           pause (kPvcPauseFactor) multiples of the base interval.
//   AF:     no P wave; a coarse Hann-windowed fibrillatory oscillation
//           (4-8 Hz) spread over the pre-QRS diastole; RR drawn
//           uniformly from a wide band around the base interval.

namespace noisepulse {

inline constexpr double kPvcQrsScale = 1.7;
inline constexpr double kPvcPrematureFactor = 0.78;
inline constexpr double kPvcPauseFactor = 1.30;

// Full width at 10% of peak = this constant times the Gaussian sigma.
inline constexpr double kWidthToSigma = 4.2919320754;

// One beat rendered on a standalone window; the R peak sits at
// 2*pq_interval + p_width seconds from the start (PVC widening can push
// tails past a one-pq margin). Draws fibrillatory frequency/phase for AF
// beats from rng.
std::vector<double> synth_beat(const MorphologyParams& params, BeatClass cls,
                               Rng& rng, double sample_rate = 250.0);

// duration >= 2 s. r_peaks carry the generator's ground-truth positions.
EcgSignal synth_segment(const MorphologyParams& params, BeatClass cls,
                        double duration_s, std::uint64_t seed,
                        double sample_rate = 250.0);

// Per-segment morphology is drawn from a bounded population distribution
// around the defaults; anomalous segments split evenly between PVC and AF
// with ties favouring PVC. Segment i is generated from the derived seed
// derive_stream(seed, stream_tags::kSegment, i), so parallel and serial
// generation are bit-identical.
std::vector<EcgSignal> generate_dataset(std::size_t n, double anomaly_fraction,
                                        std::uint64_t seed,
                                        double duration_s = 10.0);

// Segment `index` of the dataset above without materializing the rest;
// cls must match the dataset_class_plan entry for the same index.
EcgSignal dataset_segment(std::uint64_t seed, std::size_t index, BeatClass cls,
                          double duration_s = 10.0);

// The exact class layout generate_dataset uses, exposed for bookkeeping
// checks and CSV export.
std::vector<BeatClass> dataset_class_plan(std::size_t n, double anomaly_fraction);

std::uint64_t dataset_segment_seed(std::uint64_t master_seed, std::size_t index);

} // namespace noisepulse
