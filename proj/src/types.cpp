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

#include "noisepulse/types.hpp"

#include <cmath>

#include "noisepulse/errors.hpp"

namespace noisepulse {

const char* to_string(BeatClass c)
{
    switch (c) {
    case BeatClass::Normal: return "Normal";
    case BeatClass::Pvc: return "PVC";
    case BeatClass::Af: return "AF";
    }
    return "?";
}

BeatClass beat_class_from_string(const std::string& s)
{
    if (s == "Normal")
        return BeatClass::Normal;
    if (s == "PVC")
        return BeatClass::Pvc;
    if (s == "AF")
        return BeatClass::Af;
    throw ParameterError("unknown beat class: " + s);
}

void MorphologyParams::validate() const
{
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(p_width) || !positive(qrs_width) || !positive(t_width))
        throw ParameterError("morphology widths must be positive");
    if (!positive(pq_interval) || !positive(qt_interval))
        throw ParameterError("morphology intervals must be positive");
    if (!std::isfinite(p_amplitude) || !std::isfinite(qrs_amplitude) ||
        !std::isfinite(t_amplitude))
        throw ParameterError("morphology amplitudes must be finite");
    if (!(baseline_heart_rate > 0.0) || !(baseline_heart_rate < 300.0))
        throw ParameterError("baseline heart rate out of range (0, 300)");
    if (!std::isfinite(rr_jitter_sigma) || rr_jitter_sigma < 0.0)
        throw ParameterError("rr jitter sigma must be nonnegative");
}

void EcgSignal::validate() const
{
    if (!(sample_rate > 0.0))
        throw ParameterError("sample rate must be positive");
    if (r_peaks.size() != beat_labels.size())
        throw ParameterError("beat label count does not match r peak count");
    for (std::size_t i = 0; i < r_peaks.size(); ++i) {
        if (r_peaks[i] >= samples.size())
            throw ParameterError("r peak index out of range");
        if (i > 0 && r_peaks[i] <= r_peaks[i - 1])
            throw ParameterError("r peaks must be strictly increasing");
    }
    for (double v : samples)
        if (!std::isfinite(v))
            throw ParameterError("signal contains non-finite samples");
}

} // namespace noisepulse
