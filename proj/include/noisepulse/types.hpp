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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace noisepulse {

enum class BeatClass : std::uint8_t { Normal = 0, Pvc = 1, Af = 2 };

inline constexpr int kNumClasses = 3;

const char* to_string(BeatClass c);
BeatClass beat_class_from_string(const std::string& s);

// Morphology of one synthetic beat. Widths are full widths measured at 10%
// of the component's peak amplitude; pq_interval is the P-center-to-R time
// and qt_interval the R-to-T-center time.
struct MorphologyParams {
    double p_amplitude = 0.15;   // mV
    double p_width = 0.09;       // s
    double qrs_amplitude = 1.0;  // mV
    double qrs_width = 0.08;     // s
    double t_amplitude = 0.30;   // mV
    double t_width = 0.16;       // s
    double pq_interval = 0.16;   // s
    double qt_interval = 0.32;   // s
    double baseline_heart_rate = 75.0; // beats/min
    double rr_jitter_sigma = 0.03;     // s

    void validate() const; // throws ParameterError
};

// Annotated single-lead waveform. r_peaks are ground-truth generator
// annotations when the signal is synthetic and detector output otherwise.
struct EcgSignal {
    std::vector<double> samples; // mV
    double sample_rate = 250.0;  // Hz
    std::vector<std::size_t> r_peaks;
    std::vector<BeatClass> beat_labels;
    BeatClass segment_label = BeatClass::Normal;

    double duration_s() const
    {
        return static_cast<double>(samples.size()) / sample_rate;
    }
    void validate() const; // throws ParameterError
};

} // namespace noisepulse
