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

#include "noisepulse/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noisepulse/errors.hpp"
#include "noisepulse/kernels.hpp"

namespace noisepulse {

const std::array<double, kWaveletFilterLength> kDb4LowPass = {
    0.23037781330885523, 0.7148465705525415, 0.6308807679295904,
    -0.02798376941698385, -0.18703481171888114, 0.030841381835986965,
    0.032883011666982945, -0.010597401784997278,
};

namespace {

constexpr std::size_t kPad = kWaveletFilterLength - 1;

std::array<double, kWaveletFilterLength> high_pass()
{
    std::array<double, kWaveletFilterLength> g;
    for (std::size_t m = 0; m < kWaveletFilterLength; ++m)
        g[m] = (m % 2 == 0 ? 1.0 : -1.0) * kDb4LowPass[kPad - m];
    return g;
}

std::size_t child_length(std::size_t parent)
{
    return (parent + kWaveletFilterLength) / 2; // ceil((parent + 7) / 2)
}

// Subband lengths for each level given the top-level input length:
// lengths[0] = input, lengths[l] = level-l coefficient count.
std::vector<std::size_t> length_chain(std::size_t input_length, std::size_t levels)
{
    std::vector<std::size_t> lengths(levels + 1);
    lengths[0] = input_length;
    for (std::size_t l = 1; l <= levels; ++l)
        lengths[l] = child_length(lengths[l - 1]);
    return lengths;
}

std::vector<double> extend_symmetric(const std::vector<double>& x)
{
    const std::size_t n = x.size();
    std::vector<double> ext(n + 2 * kPad);
    for (std::size_t j = 0; j < kPad; ++j) {
        ext[j] = x[kPad - 1 - j];
        ext[kPad + n + j] = x[n - 1 - j];
    }
    std::copy(x.begin(), x.end(), ext.begin() + static_cast<std::ptrdiff_t>(kPad));
    return ext;
}

} // namespace

SubbandSet dwt(const std::vector<double>& samples, int levels)
{
    if (levels < 1)
        throw ParameterError("dwt: levels must be >= 1");
    const std::size_t min_len =
        std::max(std::size_t{ 1 } << levels, kWaveletFilterLength);
    if (samples.size() < min_len)
        throw InsufficientDataError("dwt: need at least " + std::to_string(min_len)
                                    + " samples for " + std::to_string(levels)
                                    + " levels, got " + std::to_string(samples.size()));

    const std::array<double, kWaveletFilterLength> g = high_pass();

    SubbandSet out;
    out.input_length = samples.size();
    out.details.reserve(static_cast<std::size_t>(levels));
    std::vector<double> current = samples;
    for (int lvl = 0; lvl < levels; ++lvl) {
        const std::size_t n_out = child_length(current.size());
        const std::vector<double> ext = extend_symmetric(current);
        std::vector<double> approx(n_out);
        std::vector<double> detail(n_out);
        kernels::conv8_decimate2(ext.data(), kDb4LowPass.data(), approx.data(), n_out);
        kernels::conv8_decimate2(ext.data(), g.data(), detail.data(), n_out);
        out.details.push_back(std::move(detail));
        current = std::move(approx);
    }
    out.approx = std::move(current);
    return out;
}

std::vector<double> idwt(const SubbandSet& subbands)
{
    const std::size_t levels = subbands.details.size();
    if (levels == 0 || subbands.input_length == 0)
        throw ParameterError("idwt: empty subband set");
    const std::vector<std::size_t> lengths = length_chain(subbands.input_length, levels);
    for (std::size_t l = 0; l < levels; ++l)
        if (subbands.details[l].size() != lengths[l + 1])
            throw ParameterError("idwt: detail level " + std::to_string(l + 1)
                                 + " has " + std::to_string(subbands.details[l].size())
                                 + " coefficients, expected "
                                 + std::to_string(lengths[l + 1]));
    if (subbands.approx.size() != lengths[levels])
        throw ParameterError("idwt: approximation length mismatch");

    const std::array<double, kWaveletFilterLength> g = high_pass();

    // Adjoint of the analysis step: scatter each coefficient back through
    // its filter window, then drop the extension margin. Interior samples
    // receive contributions from every window that covered them, and the
    // orthogonality of the filter translates makes the sum reproduce the
    // parent exactly.
    std::vector<double> current = subbands.approx;
    for (std::size_t l = levels; l-- > 0;) {
        const std::size_t n_parent = lengths[l];
        const std::size_t n_child = lengths[l + 1];
        const std::vector<double>& detail = subbands.details[l];
        std::vector<double> scatter(2 * (n_child - 1) + kWaveletFilterLength, 0.0);
        for (std::size_t k = 0; k < n_child; ++k) {
            const double a = current[k];
            const double d = detail[k];
            double* z = scatter.data() + 2 * k;
            for (std::size_t m = 0; m < kWaveletFilterLength; ++m)
                z[m] += a * kDb4LowPass[m] + d * g[m];
        }
        current.assign(scatter.begin() + static_cast<std::ptrdiff_t>(kPad),
                       scatter.begin() + static_cast<std::ptrdiff_t>(kPad + n_parent));
    }
    return current;
}

std::array<double, kWaveletFeatureCount> wavelet_features(const SubbandSet& subbands)
{
    std::vector<const std::vector<double>*> bands;
    bands.reserve(subbands.details.size() + 1);
    for (const std::vector<double>& d : subbands.details)
        bands.push_back(&d);
    bands.push_back(&subbands.approx);
    if (bands.size() != kWaveletFeatureCount / 2)
        throw ParameterError("wavelet_features: expected "
                             + std::to_string(kWaveletFeatureCount / 2)
                             + " subbands, got " + std::to_string(bands.size()));

    double total_energy = 0.0;
    for (const std::vector<double>* band : bands)
        if (!band->empty())
            total_energy += kernels::sum_squares(band->data(), band->size());

    std::array<double, kWaveletFeatureCount> out{};
    for (std::size_t b = 0; b < bands.size(); ++b) {
        const std::vector<double>& c = *bands[b];
        if (c.empty() || total_energy == 0.0)
            continue;
        const double energy = kernels::sum_squares(c.data(), c.size());
        double mean = 0.0;
        for (double v : c)
            mean += v;
        mean /= static_cast<double>(c.size());
        double var = 0.0;
        for (double v : c)
            var += (v - mean) * (v - mean);
        var /= static_cast<double>(c.size());
        out[2 * b] = std::log1p(energy);
        out[2 * b + 1] = var / total_energy;
    }
    return out;
}

} // namespace noisepulse
