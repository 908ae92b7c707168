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

#include "noisepulse/iir.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "noisepulse/errors.hpp"

namespace noisepulse {

namespace {

using cplx = std::complex<double>;

// Bilinear transform of an analog pole or zero.
cplx bilinear(cplx s, double fs)
{
    return (2.0 * fs + s) / (2.0 * fs - s);
}

// Real biquad denominator from a conjugate (or real) pole pair. The
// imaginary parts of sum and product cancel by construction; taking the
// real part only discards roundoff.
void set_poles(Biquad& sec, cplx p1, cplx p2)
{
    sec.a1 = -(p1 + p2).real();
    sec.a2 = (p1 * p2).real();
}

// Evaluates the cascade at z = e^{jw}, w in radians per sample.
cplx response_at(const std::vector<Biquad>& sections, double w)
{
    const cplx zinv = std::exp(cplx(0.0, -w));
    const cplx zinv2 = zinv * zinv;
    cplx h(1.0, 0.0);
    for (const Biquad& s : sections)
        h *= (s.b0 + s.b1 * zinv + s.b2 * zinv2) /
             (1.0 + s.a1 * zinv + s.a2 * zinv2);
    return h;
}

// One section over the whole signal, in place, starting from the steady
// state for a constant run-in of x[0].
void apply_section(const Biquad& s, std::vector<double>& x)
{
    double z1 = 0.0;
    double z2 = 0.0;
    if (!x.empty()) {
        const double x0 = x.front();
        const double y0 = x0 * (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
        z1 = y0 - s.b0 * x0;
        z2 = s.b2 * x0 - s.a2 * y0;
    }
    for (double& v : x) {
        const double in = v;
        const double out = s.b0 * in + z1;
        z1 = s.b1 * in - s.a1 * out + z2;
        z2 = s.b2 * in - s.a2 * out;
        v = out;
    }
}

void apply_cascade(const IirFilter& filter, std::vector<double>& x)
{
    for (const Biquad& s : filter.sections)
        apply_section(s, x);
}

} // namespace

IirFilter design_butterworth_bandpass(int prototype_order, double f_lo,
                                      double f_hi, double fs)
{
    if (prototype_order < 1)
        throw ParameterError("band-pass design: prototype order must be >= 1");
    if (!(fs > 0.0) || !(f_lo > 0.0) || !(f_lo < f_hi) || !(f_hi < fs / 2.0))
        throw ParameterError("band-pass design: need 0 < f_lo < f_hi < fs/2, got ["
                             + std::to_string(f_lo) + ", " + std::to_string(f_hi)
                             + "] at fs=" + std::to_string(fs));

    const int n = prototype_order;
    const double pi = std::numbers::pi;

    // Prewarped analog edges, so the bilinear transform lands the digital
    // -3 dB points on f_lo and f_hi exactly.
    const double w1 = 2.0 * fs * std::tan(pi * f_lo / fs);
    const double w2 = 2.0 * fs * std::tan(pi * f_hi / fs);
    const double w0 = std::sqrt(w1 * w2);
    const double bw = w2 - w1;

    IirFilter filter;
    filter.sample_rate = fs;
    filter.sections.reserve(static_cast<std::size_t>(n));

    // Low-pass to band-pass: each prototype pole p on the unit Butterworth
    // circle splits into the two roots of s^2 - (p*bw)*s + w0^2 = 0. A
    // conjugate prototype pair therefore yields two conjugate band-pass
    // pairs, one biquad each; the real pole of an odd-order prototype
    // yields a single self-conjugate pair.
    for (int k = 0; k < n; ++k) {
        const double theta = pi * (2.0 * k + n + 1.0) / (2.0 * n);
        const cplx p(std::cos(theta), std::sin(theta));
        if (p.imag() < -1e-12)
            continue; // lower-half poles are covered by their conjugates
        const cplx pb = p * bw;
        const cplx root = std::sqrt(pb * pb - 4.0 * w0 * w0);
        const cplx s_hi = (pb + root) / 2.0;
        const cplx s_lo = (pb - root) / 2.0;

        if (p.imag() > 1e-12) {
            for (const cplx& s : { s_hi, s_lo }) {
                Biquad sec;
                const cplx zp = bilinear(s, fs);
                set_poles(sec, zp, std::conj(zp));
                sec.b2 = -1.0;
                filter.sections.push_back(sec);
            }
        } else {
            // Real prototype pole: s_hi and s_lo together form one
            // real-coefficient section whether they come out real or as a
            // conjugate pair.
            Biquad sec;
            set_poles(sec, bilinear(s_hi, fs), bilinear(s_lo, fs));
            sec.b2 = -1.0;
            filter.sections.push_back(sec);
        }
    }

    // Every section carries one zero at z=1 and one at z=-1, the images of
    // the analog zeros at s=0 and s=infinity. Normalize to unit gain at the
    // digital image of the analog center frequency.
    const double wc = 2.0 * std::atan(w0 / (2.0 * fs));
    const double mag_c = std::abs(response_at(filter.sections, wc));
    const double per_section =
        std::pow(1.0 / mag_c, 1.0 / static_cast<double>(filter.sections.size()));
    for (Biquad& sec : filter.sections) {
        sec.b0 *= per_section;
        sec.b2 *= per_section;
    }
    return filter;
}

std::complex<double> frequency_response(const IirFilter& filter, double freq_hz)
{
    if (!(filter.sample_rate > 0.0))
        throw ParameterError("frequency_response: filter has no sample rate");
    const double w = 2.0 * std::numbers::pi * freq_hz / filter.sample_rate;
    return response_at(filter.sections, w);
}

std::vector<double> iir_filter(const IirFilter& filter, const std::vector<double>& x)
{
    std::vector<double> y = x;
    apply_cascade(filter, y);
    return y;
}

std::vector<double> filtfilt(const IirFilter& filter, const std::vector<double>& x)
{
    const std::size_t padlen = 3 * filter.order();
    if (x.size() <= padlen)
        throw InsufficientDataError("filtfilt: signal length "
                                    + std::to_string(x.size())
                                    + " must exceed the edge extension of "
                                    + std::to_string(padlen) + " samples");

    const std::size_t n = x.size();
    const auto pad = static_cast<std::ptrdiff_t>(padlen);
    std::vector<double> ext(n + 2 * padlen);
    for (std::size_t i = 0; i < padlen; ++i) {
        ext[i] = 2.0 * x.front() - x[padlen - i];
        ext[padlen + n + i] = 2.0 * x.back() - x[n - 2 - i];
    }
    std::copy(x.begin(), x.end(), ext.begin() + pad);

    apply_cascade(filter, ext);
    std::reverse(ext.begin(), ext.end());
    apply_cascade(filter, ext);
    std::reverse(ext.begin(), ext.end());

    return { ext.begin() + pad, ext.begin() + pad + static_cast<std::ptrdiff_t>(n) };
}

} // namespace noisepulse
