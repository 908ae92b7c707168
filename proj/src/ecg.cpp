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

#include "noisepulse/ecg.hpp"

#include <algorithm>
#include <cmath>

#include "noisepulse/errors.hpp"
#include "noisepulse/parallel.hpp"
#include "noisepulse/stream_tags.hpp"

namespace noisepulse {

namespace {

// First beat lands here; beats stop once the T wave could no longer fit.
constexpr double kFirstBeatOffset = 0.35;
constexpr double kEndMargin = 0.45;

void render_bump(std::vector<double>& samples, double fs, double center,
                 double amp, double sigma)
{
    if (amp == 0.0)
        return;
    double lo = center - 5.0 * sigma;
    double hi = center + 5.0 * sigma;
    std::size_t i0 = lo <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(lo * fs));
    std::size_t i1 = std::min(samples.size(),
                              hi <= 0.0 ? 0 : static_cast<std::size_t>(std::floor(hi * fs)) + 1);
    double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    for (std::size_t i = i0; i < i1; ++i) {
        double dt = static_cast<double>(i) / fs - center;
        samples[i] += amp * std::exp(-dt * dt * inv2s2);
    }
}

// Hann-windowed sinusoid standing in for the P wave on AF beats.
void render_fibrillation(std::vector<double>& samples, double fs, double center,
                         double amp, double half_width, double freq, double phase)
{
    if (amp == 0.0)
        return;
    double lo = center - half_width;
    double hi = center + half_width;
    std::size_t i0 = lo <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(lo * fs));
    std::size_t i1 = std::min(samples.size(),
                              hi <= 0.0 ? 0 : static_cast<std::size_t>(std::floor(hi * fs)) + 1);
    for (std::size_t i = i0; i < i1; ++i) {
        double dt = static_cast<double>(i) / fs - center;
        double hann = 0.5 * (1.0 + std::cos(M_PI * dt / half_width));
        samples[i] += amp * hann * std::sin(2.0 * M_PI * freq * dt + phase);
    }
}

struct FibDraw {
    double freq;
    double phase;
};

FibDraw draw_fibrillation(Rng& rng)
{
    return {rng.uniform(4.0, 8.0), rng.uniform(0.0, 2.0 * M_PI)};
}

// Renders one beat's waves around the R time. AF beats consume one
// FibDraw; others ignore it.
void render_beat(std::vector<double>& samples, double fs,
                 const MorphologyParams& p, BeatClass cls, double r_time,
                 const FibDraw& fib)
{
    double qrs_scale = cls == BeatClass::Pvc ? kPvcQrsScale : 1.0;
    double sigma_q = qrs_scale * p.qrs_width / kWidthToSigma;

    if (cls == BeatClass::Normal)
        render_bump(samples, fs, r_time - p.pq_interval, p.p_amplitude,
                    p.p_width / kWidthToSigma);
    else if (cls == BeatClass::Af)
        // Coarse fibrillatory undulation filling most of the diastole,
        // not just the P position: stronger than a P wave and wide
        // enough that the 4-8 Hz activity survives added noise.
        render_fibrillation(samples, fs, r_time - p.pq_interval,
                            1.4 * p.p_amplitude, 1.5 * p.pq_interval,
                            fib.freq, fib.phase);

    render_bump(samples, fs, r_time, p.qrs_amplitude, sigma_q);
    render_bump(samples, fs, r_time + 1.5 * sigma_q, -0.25 * p.qrs_amplitude,
                0.6 * sigma_q);
    render_bump(samples, fs, r_time + p.qt_interval, p.t_amplitude,
                p.t_width / kWidthToSigma);
}

double next_rr(const MorphologyParams& p, BeatClass cls, std::size_t beat_index,
               Rng& rng)
{
    double rr0 = 60.0 / p.baseline_heart_rate;
    switch (cls) {
    case BeatClass::Normal: {
        double rr = rr0 + p.rr_jitter_sigma * rng.next_gaussian();
        return std::max(rr, std::max(0.3, 0.4 * rr0));
    }
    case BeatClass::Pvc: {
        // Premature beat followed by a compensatory pause, alternating.
        double factor = beat_index % 2 == 0 ? kPvcPrematureFactor : kPvcPauseFactor;
        double rr = factor * rr0 + 0.5 * p.rr_jitter_sigma * rng.next_gaussian();
        return std::max(rr, 0.3);
    }
    case BeatClass::Af: {
        double rr = rr0 * rng.uniform(0.55, 1.45);
        return std::max(rr, 0.35);
    }
    }
    return rr0;
}

} // namespace

std::vector<double> synth_beat(const MorphologyParams& params, BeatClass cls,
                               Rng& rng, double sample_rate)
{
    params.validate();
    double pre = 2.0 * params.pq_interval + params.p_width;
    double post = params.qt_interval + 2.0 * params.t_width;
    std::size_t n = static_cast<std::size_t>(std::lround((pre + post) * sample_rate));
    std::vector<double> samples(n, 0.0);
    FibDraw fib{0.0, 0.0};
    if (cls == BeatClass::Af)
        fib = draw_fibrillation(rng);
    render_beat(samples, sample_rate, params, cls, pre, fib);
    return samples;
}

EcgSignal synth_segment(const MorphologyParams& params, BeatClass cls,
                        double duration_s, std::uint64_t seed,
                        double sample_rate)
{
    params.validate();
    if (!(duration_s >= 2.0))
        throw ParameterError("segment duration must be at least 2 s");

    EcgSignal out;
    out.sample_rate = sample_rate;
    out.segment_label = cls;
    out.samples.assign(static_cast<std::size_t>(std::lround(duration_s * sample_rate)), 0.0);

    Rng rng{seed};

    std::vector<double> r_times;
    double t = kFirstBeatOffset;
    std::size_t beat = 0;
    while (t <= duration_s - kEndMargin) {
        r_times.push_back(t);
        t += next_rr(params, cls, beat++, rng);
    }
    if (r_times.empty())
        throw ParameterError("segment too short to hold one beat");

    for (double r : r_times) {
        FibDraw fib{0.0, 0.0};
        if (cls == BeatClass::Af)
            fib = draw_fibrillation(rng);
        render_beat(out.samples, sample_rate, params, cls, r, fib);
        out.r_peaks.push_back(static_cast<std::size_t>(std::lround(r * sample_rate)));
        out.beat_labels.push_back(cls);
    }

    // The S lobe pulls the rendered maximum slightly left of the bump
    // center, so the rounded center can sit one sample off the actual
    // apex. Annotations must mark the peak as it exists in the samples,
    // otherwise detector output and ground truth disagree by a sample
    // on perfectly clean beats.
    for (std::size_t& peak : out.r_peaks) {
        const std::size_t lo = peak >= 2 ? peak - 2 : 0;
        const std::size_t hi = std::min(peak + 2, out.samples.size() - 1);
        std::size_t best = peak;
        for (std::size_t i = lo; i <= hi; ++i)
            if (std::fabs(out.samples[i]) > std::fabs(out.samples[best]))
                best = i;
        peak = best;
    }
    return out;
}

std::vector<BeatClass> dataset_class_plan(std::size_t n, double anomaly_fraction)
{
    if (n == 0)
        throw ParameterError("dataset size must be positive");
    if (!(anomaly_fraction >= 0.0 && anomaly_fraction <= 1.0))
        throw ParameterError("anomaly fraction must lie in [0, 1]");

    auto n_anom = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) * anomaly_fraction));
    std::size_t n_pvc = (n_anom + 1) / 2; // tie -> extra PVC
    std::size_t n_af = n_anom - n_pvc;

    std::vector<BeatClass> plan(n, BeatClass::Normal);
    for (std::size_t i = n - n_anom; i < n - n_af; ++i)
        plan[i] = BeatClass::Pvc;
    for (std::size_t i = n - n_af; i < n; ++i)
        plan[i] = BeatClass::Af;
    return plan;
}

std::uint64_t dataset_segment_seed(std::uint64_t master_seed, std::size_t index)
{
    return derive_stream(master_seed, stream_tags::kSegment, index);
}

EcgSignal dataset_segment(std::uint64_t seed, std::size_t index, BeatClass cls,
                          double duration_s)
{
    Rng pop(derive_stream(seed, stream_tags::kPopulation, index));
    MorphologyParams p;
    p.baseline_heart_rate = pop.uniform(60.0, 95.0);
    p.p_amplitude *= pop.uniform(0.85, 1.15);
    p.qrs_amplitude *= pop.uniform(0.85, 1.15);
    p.t_amplitude *= pop.uniform(0.85, 1.15);
    p.p_width *= pop.uniform(0.9, 1.1);
    p.qrs_width *= pop.uniform(0.9, 1.1);
    p.t_width *= pop.uniform(0.9, 1.1);
    p.pq_interval *= pop.uniform(0.95, 1.05);
    p.qt_interval *= pop.uniform(0.95, 1.05);
    p.rr_jitter_sigma = pop.uniform(0.02, 0.04);

    return synth_segment(p, cls, duration_s, dataset_segment_seed(seed, index));
}

std::vector<EcgSignal> generate_dataset(std::size_t n, double anomaly_fraction,
                                        std::uint64_t seed, double duration_s)
{
    auto plan = dataset_class_plan(n, anomaly_fraction);

    std::vector<EcgSignal> segments(n);
    parallel_for(n, [&](std::size_t i) {
        segments[i] = dataset_segment(seed, i, plan[i], duration_s);
    });
    return segments;
}

} // namespace noisepulse
