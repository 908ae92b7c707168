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

#include "noisepulse/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noisepulse/errors.hpp"
#include "noisepulse/wavelet.hpp"

namespace noisepulse {

const std::array<const char*, kFeatureCount> kFeatureNames = {
    "rr_mean",
    "rr_std",
    "rr_rmssd",
    "qrs_width_mean",
    "qrs_width_max",
    "d1_log_energy",
    "d1_norm_variance",
    "d2_log_energy",
    "d2_norm_variance",
    "d3_log_energy",
    "d3_norm_variance",
    "d4_log_energy",
    "d4_norm_variance",
    "d5_log_energy",
    "d5_norm_variance",
};

RrStats rr_features(const std::vector<std::size_t>& peaks, double sample_rate)
{
    if (!(sample_rate > 0.0))
        throw ParameterError("rr_features: sample rate must be positive");
    if (peaks.size() < 3)
        throw InsufficientDataError("rr_features: need at least 3 peaks, got "
                                    + std::to_string(peaks.size()));

    std::vector<double> rr(peaks.size() - 1);
    for (std::size_t i = 1; i < peaks.size(); ++i) {
        if (peaks[i] <= peaks[i - 1])
            throw ParameterError("rr_features: peaks must be strictly increasing");
        rr[i - 1] = static_cast<double>(peaks[i] - peaks[i - 1]) / sample_rate;
    }

    RrStats stats;
    for (double v : rr)
        stats.mean_s += v;
    stats.mean_s /= static_cast<double>(rr.size());
    double var = 0.0;
    for (double v : rr)
        var += (v - stats.mean_s) * (v - stats.mean_s);
    stats.std_s = std::sqrt(var / static_cast<double>(rr.size()));
    double sq = 0.0;
    for (std::size_t i = 1; i < rr.size(); ++i)
        sq += (rr[i] - rr[i - 1]) * (rr[i] - rr[i - 1]);
    stats.rmssd_s = std::sqrt(sq / static_cast<double>(rr.size() - 1));
    return stats;
}

QrsStats qrs_widths(const EcgSignal& signal, const std::vector<std::size_t>& peaks)
{
    if (!(signal.sample_rate > 0.0))
        throw ParameterError("qrs_widths: sample rate must be positive");
    const std::size_t n = signal.samples.size();
    const auto reach = static_cast<std::size_t>(std::lround(0.120 * signal.sample_rate));

    QrsStats stats;
    std::size_t beats = 0;
    for (std::size_t peak : peaks) {
        if (peak < reach || peak + reach >= n)
            continue;
        const double amp = signal.samples[peak];
        if (!(amp > 0.0))
            continue;
        const double thr = 0.1 * amp;
        std::size_t left = peak;
        while (left > peak - reach && signal.samples[left - 1] >= thr)
            --left;
        std::size_t right = peak;
        while (right < peak + reach && signal.samples[right + 1] >= thr)
            ++right;
        // Linear interpolation to the exact threshold crossing; without
        // it one sample of quantization is 7% of a typical QRS width. At
        // the window edge the crossing is clamped to the edge sample.
        double left_x = static_cast<double>(left);
        if (left > peak - reach)
            left_x -= (signal.samples[left] - thr)
                / (signal.samples[left] - signal.samples[left - 1]);
        double right_x = static_cast<double>(right);
        if (right < peak + reach)
            right_x += (signal.samples[right] - thr)
                / (signal.samples[right] - signal.samples[right + 1]);
        const double width = (right_x - left_x) / signal.sample_rate;
        stats.mean_s += width;
        stats.max_s = std::max(stats.max_s, width);
        ++beats;
    }
    if (beats == 0)
        throw InsufficientDataError(
            "qrs_widths: no beat had a measurable window inside the signal");
    stats.mean_s /= static_cast<double>(beats);
    return stats;
}

FeatureVector extract_features(const EcgSignal& signal, bool use_ground_truth_peaks)
{
    std::vector<std::size_t> peaks;
    if (use_ground_truth_peaks) {
        if (signal.r_peaks.empty())
            throw ParameterError(
                "extract_features: ground-truth peaks requested but none stored");
        peaks = signal.r_peaks;
    } else {
        peaks = detect_r_peaks(signal);
    }

    const RrStats rr = rr_features(peaks, signal.sample_rate);
    const QrsStats qrs = qrs_widths(signal, peaks);
    const auto wavelet = wavelet_features(dwt(signal.samples));

    FeatureVector out;
    out[0] = rr.mean_s;
    out[1] = rr.std_s;
    out[2] = rr.rmssd_s;
    out[3] = qrs.mean_s;
    out[4] = qrs.max_s;
    // Detail-band pairs only; the a5 statistics are dropped to keep the
    // vector at 15 entries.
    for (std::size_t i = 0; i < kFeatureCount - 5; ++i)
        out[5 + i] = wavelet[i];
    return out;
}

} // namespace noisepulse
