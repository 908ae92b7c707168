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

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "noisepulse/errors.hpp"
#include "noisepulse/iir.hpp"
#include "noisepulse/rng.hpp"

using namespace noisepulse;

namespace {

std::vector<double> make_sine(double freq, double fs, std::size_t n,
                              double amp = 1.0)
{
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = amp * std::sin(2.0 * std::numbers::pi * freq
                              * static_cast<double>(i) / fs);
    return x;
}

} // namespace

TEST_CASE("band edges sit at -3 dB by construction")
{
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int order : { 2, 4, 5 }) {
        const IirFilter f = design_butterworth_bandpass(order, 0.5, 40.0, 250.0);
        CHECK(std::abs(frequency_response(f, 0.5)) == doctest::Approx(inv_sqrt2).epsilon(1e-9));
        CHECK(std::abs(frequency_response(f, 40.0)) == doctest::Approx(inv_sqrt2).epsilon(1e-9));
    }
    const IirFilter det = design_butterworth_bandpass(2, 5.0, 15.0, 250.0);
    CHECK(std::abs(frequency_response(det, 5.0)) == doctest::Approx(inv_sqrt2).epsilon(1e-9));
    CHECK(std::abs(frequency_response(det, 15.0)) == doctest::Approx(inv_sqrt2).epsilon(1e-9));
}

TEST_CASE("magnitude response matches an independent design reference")
{
    // Reference values computed with scipy.signal.butter(4, [0.5, 40],
    // 'band', fs=250) and butter(2, [5, 15], 'band', fs=250).
    const IirFilter f = design_butterworth_bandpass(4, 0.5, 40.0, 250.0);
    CHECK(std::abs(frequency_response(f, 4.472)) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(frequency_response(f, 10.0)) == doctest::Approx(0.9999994).epsilon(1e-6));
    CHECK(std::abs(frequency_response(f, 60.0)) == doctest::Approx(0.1132257).epsilon(1e-5));

    const IirFilter det = design_butterworth_bandpass(2, 5.0, 15.0, 250.0);
    CHECK(std::abs(frequency_response(det, 10.0)) == doctest::Approx(0.9982).epsilon(1e-3));
    CHECK(std::abs(frequency_response(det, 2.0)) == doctest::Approx(0.0796).epsilon(1e-3));
    CHECK(std::abs(frequency_response(det, 30.0)) == doctest::Approx(0.1214).epsilon(1e-3));
}

TEST_CASE("gain never exceeds 1 and decays monotonically outside the band")
{
    const IirFilter f = design_butterworth_bandpass(4, 0.5, 40.0, 250.0);
    double prev_hi = 1.0;
    for (double freq = 41.0; freq < 125.0; freq += 1.0) {
        const double mag = std::abs(frequency_response(f, freq));
        CHECK(mag < prev_hi);
        prev_hi = mag;
    }
    for (double freq = 0.05; freq < 124.9; freq += 0.05)
        CHECK(std::abs(frequency_response(f, freq)) < 1.0 + 1e-9);
}

TEST_CASE("all poles are strictly inside the unit circle")
{
    for (int order : { 1, 2, 3, 4, 5, 8 }) {
        const IirFilter f = design_butterworth_bandpass(order, 0.5, 40.0, 250.0);
        CHECK(f.sections.size() == static_cast<std::size_t>(order));
        for (const Biquad& s : f.sections) {
            // Stability triangle for z^2 + a1 z + a2.
            CHECK(s.a2 < 1.0);
            CHECK(std::abs(s.a1) < 1.0 + s.a2);
        }
    }
}

TEST_CASE("filtfilt passes a passband sine with |H|^2 gain and zero phase")
{
    const IirFilter f = design_butterworth_bandpass(4, 0.5, 40.0, 250.0);
    const std::vector<double> x = make_sine(10.0, 250.0, 2500);
    const std::vector<double> y = filtfilt(f, x);
    REQUIRE(y.size() == x.size());

    // Project the central 20 periods onto the in-phase and quadrature
    // components. The 0.5 Hz corner poles ring for a couple of seconds, so
    // a pointwise comparison near the window edges would mostly measure
    // that decaying transient; the projection suppresses it. One sample of
    // phase lag would show up as 0.25 rad.
    const double gain = std::norm(frequency_response(f, 10.0));
    double in_phase = 0.0;
    double quadrature = 0.0;
    for (std::size_t i = 1000; i < 1500; ++i) {
        const double theta = 2.0 * std::numbers::pi * 10.0
            * static_cast<double>(i) / 250.0;
        in_phase += y[i] * std::sin(theta);
        quadrature += y[i] * std::cos(theta);
    }
    in_phase *= 2.0 / 500.0;
    quadrature *= 2.0 / 500.0;
    CHECK(in_phase == doctest::Approx(gain).epsilon(0.01));
    CHECK(std::abs(std::atan2(quadrature, in_phase)) < 0.005);

    for (std::size_t i = 1000; i < 1500; ++i)
        CHECK(y[i] == doctest::Approx(gain * x[i]).epsilon(0.02).scale(1.0));
}

TEST_CASE("filtfilt is linear")
{
    const IirFilter f = design_butterworth_bandpass(4, 0.5, 40.0, 250.0);
    Rng rng(99);
    std::vector<double> a(500);
    std::vector<double> b(500);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = rng.next_gaussian();
        b[i] = rng.next_gaussian();
    }
    std::vector<double> combo(500);
    for (std::size_t i = 0; i < combo.size(); ++i)
        combo[i] = 2.5 * a[i] - 0.75 * b[i];

    const std::vector<double> ya = filtfilt(f, a);
    const std::vector<double> yb = filtfilt(f, b);
    const std::vector<double> yc = filtfilt(f, combo);
    for (std::size_t i = 0; i < combo.size(); ++i)
        CHECK(yc[i] == doctest::Approx(2.5 * ya[i] - 0.75 * yb[i]).epsilon(1e-9).scale(1.0));
}

TEST_CASE("constant input comes out exactly zero")
{
    const IirFilter f = design_butterworth_bandpass(4, 0.5, 40.0, 250.0);
    const std::vector<double> x(400, 5.0);
    for (double v : filtfilt(f, x))
        CHECK(v == 0.0);
    for (double v : iir_filter(f, x))
        CHECK(v == 0.0);
}

TEST_CASE("filtfilt rejects signals shorter than the edge extension")
{
    const IirFilter f = design_butterworth_bandpass(4, 0.5, 40.0, 250.0);
    CHECK(f.order() == 8);
    CHECK_THROWS_AS(filtfilt(f, std::vector<double>(24, 1.0)), InsufficientDataError);
    CHECK_NOTHROW(filtfilt(f, std::vector<double>(25, 1.0)));
}

TEST_CASE("design rejects degenerate band parameters")
{
    CHECK_THROWS_AS(design_butterworth_bandpass(0, 0.5, 40.0, 250.0), ParameterError);
    CHECK_THROWS_AS(design_butterworth_bandpass(4, 0.0, 40.0, 250.0), ParameterError);
    CHECK_THROWS_AS(design_butterworth_bandpass(4, 40.0, 0.5, 250.0), ParameterError);
    CHECK_THROWS_AS(design_butterworth_bandpass(4, 0.5, 125.0, 250.0), ParameterError);
    CHECK_THROWS_AS(frequency_response(IirFilter{}, 10.0), ParameterError);
}
