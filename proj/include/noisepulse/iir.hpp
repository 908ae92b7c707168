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

#include <complex>
#include <cstddef>
#include <vector>

// Butterworth band-pass design and zero-phase (forward-backward) IIR
// filtering. Filters are kept as cascaded biquad sections rather than one
// expanded polynomial; the expanded form of a narrow 8th-order band-pass
// is numerically fragile in double precision.

namespace noisepulse {

// One second-order section, direct form II transposed:
//   y = b0*x + z1;  z1' = b1*x - a1*y + z2;  z2' = b2*x - a2*y
// The a0 coefficient is normalized to 1 and not stored.
struct Biquad {
    double b0 = 1.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double a1 = 0.0;
    double a2 = 0.0;
};

struct IirFilter {
    std::vector<Biquad> sections;
    double sample_rate = 0.0;

    // Order of the full cascade (each section contributes 2).
    std::size_t order() const { return 2 * sections.size(); }
};

// Designs a band-pass Butterworth filter by the classical analog route:
// prototype low-pass poles, frequency prewarp, low-pass to band-pass
// transform, bilinear transform. prototype_order is the order of the
// low-pass prototype, so the digital filter has order 2*prototype_order
// (prototype_order biquad sections).
//
// The passband edges are the -3 dB points: |H(f_lo)| = |H(f_hi)| =
// 1/sqrt(2) exactly, because prewarping makes the bilinear transform hit
// the analog edges exactly. Gain is 1 at the geometric center frequency.
//
// Throws ParameterError unless 0 < f_lo < f_hi < fs/2 and
// prototype_order >= 1.
IirFilter design_butterworth_bandpass(int prototype_order, double f_lo,
                                      double f_hi, double fs);

// Complex gain of the cascade at freq_hz, evaluated against the filter's
// own sample rate. Serves as the analytic oracle for gain tests: a
// forward-backward pass has magnitude response |H|^2.
std::complex<double> frequency_response(const IirFilter& filter, double freq_hz);

// Single forward pass through the cascade. Each section starts from the
// steady state it would reach on an infinite run-in of its first input
// value, which suppresses most of the startup transient for signals with
// a nonzero initial level.
std::vector<double> iir_filter(const IirFilter& filter,
                               const std::vector<double>& x);

// Zero-phase filtering: odd-symmetric edge extension by 3*order() samples,
// forward pass, backward pass, trim. The odd extension continues the
// signal through a point reflection at each endpoint, so a level shift at
// the boundary does not ring into the retained region.
//
// Throws InsufficientDataError when x.size() <= 3*order().
std::vector<double> filtfilt(const IirFilter& filter,
                             const std::vector<double>& x);

} // namespace noisepulse
