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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "noisepulse/errors.hpp"
#include "noisepulse/features.hpp"
#include "noisepulse/iir.hpp"

namespace noisepulse {

namespace {

struct Candidate {
    std::size_t pos = 0;
    double height = 0.0;
    double threshold = 0.0; // decision threshold at evaluation time
    bool accepted = false;
};

// Centered moving average via prefix sums, window clipped at the ends.
std::vector<double> moving_average(const std::vector<double>& x, std::size_t half)
{
    std::vector<double> prefix(x.size() + 1, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        prefix[i + 1] = prefix[i] + x[i];
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::size_t lo = i > half ? i - half : 0;
        const std::size_t hi = std::min(x.size(), i + half + 1);
        out[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
    }
    return out;
}

} // namespace

std::vector<std::size_t> detect_r_peaks(const EcgSignal& signal)
{
    const double fs = signal.sample_rate;
    if (!(fs > 0.0))
        throw ParameterError("detect_r_peaks: sample rate must be positive");
    const std::size_t n = signal.samples.size();
    if (signal.duration_s() < 2.0)
        throw InsufficientDataError("detect_r_peaks: need at least 2 s of signal");

    // QRS energy concentrates in 5-15 Hz; everything downstream operates
    // on this band-limited view.
    const IirFilter bp = design_butterworth_bandpass(2, 5.0, 15.0, fs);
    const std::vector<double> filtered = filtfilt(bp, signal.samples);

    std::vector<double> energy(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double d = (filtered[i + 1] - filtered[i - 1]) * 0.5 * fs;
        energy[i] = d * d;
    }
    energy.front() = energy[1];
    energy.back() = energy[n - 2];

    const auto half_window = static_cast<std::size_t>(std::lround(0.075 * fs));
    const std::vector<double> mwi = moving_average(energy, half_window);

    // Running estimates seeded from the first two seconds.
    const std::size_t learn = std::min(n, static_cast<std::size_t>(2.0 * fs));
    double peak_level = 0.0;
    double noise_level = 0.0;
    for (std::size_t i = 0; i < learn; ++i) {
        peak_level = std::max(peak_level, mwi[i]);
        noise_level += mwi[i];
    }
    double spki = 0.25 * peak_level;
    double npki = 0.5 * noise_level / static_cast<double>(learn);

    std::vector<Candidate> cands;
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (mwi[i] > mwi[i - 1] && mwi[i] >= mwi[i + 1])
            cands.push_back({ i, mwi[i], 0.0, false });

    const auto refractory = static_cast<std::size_t>(std::lround(0.2 * fs));
    std::ptrdiff_t last_accepted = -static_cast<std::ptrdiff_t>(n);
    for (Candidate& c : cands) {
        c.threshold = npki + 0.25 * (spki - npki);
        if (static_cast<std::ptrdiff_t>(c.pos) - last_accepted
            < static_cast<std::ptrdiff_t>(refractory))
            continue; // T waves and ringing inside the refractory window
        if (c.height > c.threshold) {
            c.accepted = true;
            spki = 0.125 * c.height + 0.875 * spki;
            last_accepted = static_cast<std::ptrdiff_t>(c.pos);
        } else {
            npki = 0.125 * c.height + 0.875 * npki;
        }
    }

    // Search-back: a gap much longer than the running RR average usually
    // means one beat fell under the threshold; retake the tallest
    // rejected candidate in the gap at half its original threshold.
    std::vector<std::size_t> accepted;
    for (const Candidate& c : cands)
        if (c.accepted)
            accepted.push_back(c.pos);
    if (accepted.size() >= 2) {
        const std::vector<std::size_t> base = accepted;
        double rr_sum = 0.0;
        for (std::size_t i = 1; i < base.size(); ++i)
            rr_sum += static_cast<double>(base[i] - base[i - 1]);
        const double rr_avg = rr_sum / static_cast<double>(base.size() - 1);
        for (std::size_t i = 1; i < base.size(); ++i) {
            if (static_cast<double>(base[i] - base[i - 1]) <= 1.66 * rr_avg)
                continue;
            const Candidate* best = nullptr;
            for (const Candidate& c : cands) {
                if (c.accepted || c.pos <= base[i - 1] + refractory
                    || c.pos + refractory >= base[i])
                    continue;
                if (c.height > 0.5 * c.threshold && (!best || c.height > best->height))
                    best = &c;
            }
            if (best)
                accepted.push_back(best->pos);
        }
        std::sort(accepted.begin(), accepted.end());
    }

    // Snap each detection to the raw-signal extremum nearby, then drop
    // any pair the refinement pushed inside the refractory spacing.
    const auto refine = static_cast<std::size_t>(std::lround(0.1 * fs));
    std::vector<std::size_t> peaks;
    for (std::size_t pos : accepted) {
        const std::size_t lo = pos > refine ? pos - refine : 0;
        const std::size_t hi = std::min(n, pos + refine + 1);
        std::size_t best = lo;
        for (std::size_t i = lo + 1; i < hi; ++i)
            if (std::abs(signal.samples[i]) > std::abs(signal.samples[best]))
                best = i;
        peaks.push_back(best);
    }
    std::sort(peaks.begin(), peaks.end());
    std::vector<std::size_t> out;
    for (std::size_t p : peaks) {
        if (!out.empty() && p - out.back() < refractory) {
            if (std::abs(signal.samples[p]) > std::abs(signal.samples[out.back()]))
                out.back() = p;
            continue;
        }
        if (out.empty() || p != out.back())
            out.push_back(p);
    }

    if (out.empty())
        throw InsufficientDataError("detect_r_peaks: no peaks found");
    return out;
}

} // namespace noisepulse
