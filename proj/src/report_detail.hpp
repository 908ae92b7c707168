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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "noisepulse/errors.hpp"

// Shared between the report and plot emitters: the whole point of these
// helpers is that both paths produce bit-identical numbers.

namespace noisepulse::detail {

// Fixed 1e-9 precision for serialized floats. Values at 1e6 and above
// pass through untouched; the grid would only add noise there.
inline double round_nano(double v)
{
    if (!std::isfinite(v) || std::abs(v) >= 1e6)
        return v;
    return std::nearbyint(v * 1e9) / 1e9;
}

// Power in dB relative to 1 mV^2/Hz, floored so silent bins stay finite.
inline double power_db(double power)
{
    return 10.0 * std::log10(std::max(power, 1e-30));
}

inline void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw IoError("cannot open '" + path + "' for writing");
    file << text;
    if (!file)
        throw IoError("write to '" + path + "' failed");
}

} // namespace noisepulse::detail
