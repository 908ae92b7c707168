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

#include "noisepulse/noise.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "noisepulse/errors.hpp"
#include "noisepulse/iir.hpp"
#include "noisepulse/kernels.hpp"
#include "noisepulse/rng.hpp"
#include "noisepulse/stream_tags.hpp"

namespace noisepulse {

namespace {

double mean_square(const std::vector<double>& x)
{
    if (x.empty())
        return 0.0;
    return kernels::sum_squares(x.data(), x.size()) / static_cast<double>(x.size());
}

} // namespace

void NoiseSpec::validate() const
{
    if (!std::isfinite(mean) || !std::isfinite(std_dev))
        throw ParameterError("NoiseSpec: mean and std must be finite");
    if (std_dev < 0.0)
        throw ParameterError("NoiseSpec: std must be nonnegative, got "
                             + std::to_string(std_dev));
}

EcgSignal add_noise(const EcgSignal& signal, const NoiseSpec& spec)
{
    spec.validate();
    EcgSignal out = signal;
    if (spec.std_dev == 0.0 && spec.mean == 0.0)
        return out;
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        Rng stream(derive_stream(spec.seed, stream_tags::kNoise, i));
        out.samples[i] += spec.mean + spec.std_dev * stream.next_gaussian();
    }
    return out;
}

double snr_db(const EcgSignal& clean, const EcgSignal& noisy)
{
    if (clean.samples.size() != noisy.samples.size())
        throw ParameterError("snr_db: length mismatch ("
                             + std::to_string(clean.samples.size()) + " vs "
                             + std::to_string(noisy.samples.size()) + ")");
    if (clean.sample_rate != noisy.sample_rate)
        throw ParameterError("snr_db: sample-rate mismatch");
    if (clean.samples.empty())
        throw ParameterError("snr_db: empty signals");

    std::vector<double> residual(clean.samples.size());
    for (std::size_t i = 0; i < residual.size(); ++i)
        residual[i] = noisy.samples[i] - clean.samples[i];

    const double p_signal = mean_square(clean.samples);
    const double p_residual = mean_square(residual);
    if (p_signal == 0.0)
        throw ParameterError("snr_db: zero-power clean signal");
    if (p_residual == 0.0)
        throw ParameterError("SNR undefined (no noise)");
    return 10.0 * std::log10(p_signal / p_residual);
}

NoiseSpec calibrate_noise_for_snr(const EcgSignal& signal, double target_db)
{
    if (!(target_db >= 0.0 && target_db <= 60.0))
        throw ParameterError("calibrate_noise_for_snr: target must lie in [0, 60] dB");
    const double p_signal = mean_square(signal.samples);
    if (p_signal == 0.0)
        throw ParameterError("calibrate_noise_for_snr: zero-power signal");

    NoiseSpec spec;
    spec.std_dev = std::sqrt(p_signal / std::pow(10.0, target_db / 10.0));
    if (spec.std_dev < kNoiseStdMin || spec.std_dev > kNoiseStdMax) {
        spec.std_dev = std::clamp(spec.std_dev, kNoiseStdMin, kNoiseStdMax);
        spec.clamped = true;
    }
    return spec;
}

EcgSignal baseline_filter(const EcgSignal& signal)
{
    const IirFilter filter =
        design_butterworth_bandpass(4, 0.5, 40.0, signal.sample_rate);
    EcgSignal out = signal;
    out.samples = filtfilt(filter, signal.samples);
    return out;
}

} // namespace noisepulse
