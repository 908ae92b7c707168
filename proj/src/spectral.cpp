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

#include "noisepulse/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "noisepulse/errors.hpp"

namespace noisepulse {

namespace {

using cplx = std::complex<double>;

void fft_radix2(std::vector<cplx>& a)
{
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const cplx wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

std::vector<cplx> dft_direct(const std::vector<cplx>& x)
{
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc(0.0, 0.0);
        for (std::size_t m = 0; m < n; ++m) {
            const double ang = -2.0 * std::numbers::pi
                * static_cast<double>(k) * static_cast<double>(m)
                / static_cast<double>(n);
            acc += x[m] * std::polar(1.0, ang);
        }
        out[k] = acc;
    }
    return out;
}

} // namespace

std::vector<std::complex<double>> fourier_transform(
    const std::vector<std::complex<double>>& x)
{
    const std::size_t n = x.size();
    if (n == 0)
        return {};
    if ((n & (n - 1)) == 0) {
        std::vector<cplx> a = x;
        fft_radix2(a);
        return a;
    }
    return dft_direct(x);
}

PsdEstimate welch_psd(const EcgSignal& signal, std::size_t window_length,
                      double overlap)
{
    if (window_length < 2)
        throw ParameterError("welch_psd: window must be at least 2 samples");
    if (!(overlap >= 0.0) || !(overlap < 1.0))
        throw ParameterError("welch_psd: overlap must lie in [0, 1)");
    if (signal.samples.size() < window_length)
        throw InsufficientDataError("welch_psd: signal has "
                                    + std::to_string(signal.samples.size())
                                    + " samples, shorter than one "
                                    + std::to_string(window_length)
                                    + "-sample window");

    const std::size_t len = window_length;
    const std::size_t hop =
        len - static_cast<std::size_t>(std::floor(overlap * static_cast<double>(len)));
    const double fs = signal.sample_rate;

    // Periodic Hann window; its sum of squares normalizes each
    // periodogram so that the scaling stays Parseval-consistent.
    std::vector<double> window(len);
    double sumsq = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        window[i] = 0.5
            * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i)
                              / static_cast<double>(len)));
        sumsq += window[i] * window[i];
    }

    const std::size_t n_bins = len / 2 + 1;
    std::vector<double> acc(n_bins, 0.0);
    std::size_t n_windows = 0;
    std::vector<cplx> buf(len);
    for (std::size_t start = 0; start + len <= signal.samples.size(); start += hop) {
        for (std::size_t i = 0; i < len; ++i)
            buf[i] = cplx(signal.samples[start + i] * window[i], 0.0);
        const std::vector<cplx> spec = fourier_transform(buf);
        for (std::size_t k = 0; k < n_bins; ++k)
            acc[k] += std::norm(spec[k]);
        ++n_windows;
    }

    PsdEstimate out;
    out.window_length = len;
    out.overlap = overlap;
    out.frequencies.resize(n_bins);
    out.power.resize(n_bins);
    const double scale = 1.0 / (static_cast<double>(n_windows) * fs * sumsq);
    for (std::size_t k = 0; k < n_bins; ++k) {
        out.frequencies[k] = static_cast<double>(k) * fs / static_cast<double>(len);
        // One-sided spectrum: interior bins absorb their negative-frequency
        // mirrors; DC and (for even lengths) Nyquist have none.
        const bool unpaired = k == 0 || (len % 2 == 0 && k == len / 2);
        out.power[k] = acc[k] * scale * (unpaired ? 1.0 : 2.0);
    }
    return out;
}

} // namespace noisepulse
