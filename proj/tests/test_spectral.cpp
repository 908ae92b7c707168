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
#include <complex>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "noisepulse/errors.hpp"
#include "noisepulse/rng.hpp"
#include "noisepulse/spectral.hpp"

using namespace noisepulse;

namespace {

using cplx = std::complex<double>;

// Textbook DFT, written independently of the implementation under test.
std::vector<cplx> dft_reference(const std::vector<cplx>& x)
{
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc(0.0, 0.0);
        for (std::size_t m = 0; m < n; ++m) {
            const double ang = -2.0 * std::numbers::pi
                * static_cast<double>(k * m) / static_cast<double>(n);
            acc += x[m] * cplx(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

EcgSignal signal_from(std::vector<double> samples, double fs = 250.0)
{
    EcgSignal s;
    s.samples = std::move(samples);
    s.sample_rate = fs;
    return s;
}

EcgSignal white_noise_signal(std::size_t n, double sigma, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<double> x(n);
    for (double& v : x)
        v = sigma * rng.next_gaussian();
    return signal_from(std::move(x));
}

} // namespace

TEST_CASE("radix-2 FFT agrees with the direct transform")
{
    Rng rng(7);
    for (std::size_t n : { 2u, 8u, 64u, 512u }) {
        std::vector<cplx> x(n);
        for (cplx& v : x)
            v = cplx(rng.next_gaussian(), rng.next_gaussian());
        const std::vector<cplx> fast = fourier_transform(x);
        const std::vector<cplx> slow = dft_reference(x);
        REQUIRE(fast.size() == n);
        for (std::size_t k = 0; k < n; ++k)
            CHECK(std::abs(fast[k] - slow[k]) < 1e-9 * static_cast<double>(n));
    }
}

TEST_CASE("non-power-of-two sizes fall back to the direct transform")
{
    Rng rng(8);
    std::vector<cplx> x(12);
    for (cplx& v : x)
        v = cplx(rng.next_gaussian(), rng.next_gaussian());
    const std::vector<cplx> got = fourier_transform(x);
    const std::vector<cplx> want = dft_reference(x);
    for (std::size_t k = 0; k < x.size(); ++k)
        CHECK(std::abs(got[k] - want[k]) < 1e-10);
}

TEST_CASE("pure sine concentrates power within one bin of its frequency")
{
    std::vector<double> x(2500);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = std::sin(2.0 * std::numbers::pi * 10.0
                        * static_cast<double>(i) / 250.0);
    const PsdEstimate psd = welch_psd(signal_from(std::move(x)));

    REQUIRE(psd.frequencies.size() == 257);
    REQUIRE(psd.power.size() == 257);
    const std::size_t peak = static_cast<std::size_t>(std::distance(
        psd.power.begin(), std::max_element(psd.power.begin(), psd.power.end())));
    const double bin_width = 250.0 / 512.0;
    CHECK(std::abs(psd.frequencies[peak] - 10.0) <= bin_width + 1e-12);

    // Parseval: total PSD mass approximates the signal variance A^2/2.
    double total = 0.0;
    for (double p : psd.power)
        total += p * bin_width;
    CHECK(total == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("white noise shows a flat spectrum at sigma^2/(fs/2)")
{
    const double sigma = 0.5;
    const EcgSignal noise = white_noise_signal(400000, sigma, 21);
    const PsdEstimate psd = welch_psd(noise);

    const double expected = sigma * sigma / 125.0;
    double mean_level = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 1; k + 1 < psd.power.size(); ++k) {
        mean_level += psd.power[k];
        ++count;
    }
    mean_level /= static_cast<double>(count);
    CHECK(mean_level == doctest::Approx(expected).epsilon(0.10));

    // Least-squares slope of power against frequency; for white noise the
    // total drop across the Nyquist span should be well under 2% of the
    // mean level.
    double sf = 0.0, sp = 0.0, sff = 0.0, sfp = 0.0;
    for (std::size_t k = 1; k + 1 < psd.power.size(); ++k) {
        sf += psd.frequencies[k];
        sp += psd.power[k];
        sff += psd.frequencies[k] * psd.frequencies[k];
        sfp += psd.frequencies[k] * psd.power[k];
    }
    const double nn = static_cast<double>(count);
    const double slope = (nn * sfp - sf * sp) / (nn * sff - sf * sf);
    CHECK(std::abs(slope) * 125.0 < 0.02 * mean_level);

    // Parseval again, on noise this time.
    double total = 0.0;
    for (double p : psd.power)
        total += p * 250.0 / 512.0;
    CHECK(total == doctest::Approx(sigma * sigma).epsilon(0.05));
}

TEST_CASE("zero signal produces zero power")
{
    const PsdEstimate psd = welch_psd(signal_from(std::vector<double>(1000, 0.0)));
    for (double p : psd.power)
        CHECK(p == 0.0);
}

TEST_CASE("PSD frame invariants hold")
{
    const EcgSignal noise = white_noise_signal(3000, 0.3, 5);
    const PsdEstimate psd = welch_psd(noise, 256, 0.25);
    CHECK(psd.window_length == 256);
    CHECK(psd.overlap == 0.25);
    REQUIRE(psd.frequencies.size() == psd.power.size());
    CHECK(psd.frequencies.front() == 0.0);
    CHECK(psd.frequencies.back() == doctest::Approx(125.0));
    for (std::size_t k = 1; k < psd.frequencies.size(); ++k)
        CHECK(psd.frequencies[k] > psd.frequencies[k - 1]);
    for (double p : psd.power)
        CHECK(p >= 0.0);
}

TEST_CASE("odd window lengths keep the scaling consistent")
{
    const double sigma = 0.4;
    const EcgSignal noise = white_noise_signal(60000, sigma, 3);
    const PsdEstimate psd = welch_psd(noise, 125, 0.5);
    double total = 0.0;
    for (double p : psd.power)
        total += p * 250.0 / 125.0;
    CHECK(total == doctest::Approx(sigma * sigma).epsilon(0.08));
}

TEST_CASE("welch_psd validates its arguments")
{
    const EcgSignal s = signal_from(std::vector<double>(100, 1.0));
    CHECK_THROWS_AS(welch_psd(s, 256, 0.5), InsufficientDataError);
    CHECK_THROWS_AS(welch_psd(s, 64, 1.0), ParameterError);
    CHECK_THROWS_AS(welch_psd(s, 64, -0.1), ParameterError);
    CHECK_THROWS_AS(welch_psd(s, 1, 0.5), ParameterError);
    CHECK_NOTHROW(welch_psd(s, 100, 0.0));
}
