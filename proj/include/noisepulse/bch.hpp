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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

// Binary BCH(127, 64) with correction radius t = 10, the standard
// length-127 code whose dimension lands exactly on a 64-bit secret
// (see the parameter tables in Lin & Costello, ch. 6). The field is
// GF(2^7) built on x^7 + x + 1; the generator polynomial is the product
// of the minimal polynomials of alpha^1 through alpha^20, which has
// degree 63. Tables are computed once on first use and immutable after
// that, so everything here is safe to call concurrently.
//
// Bit vectors are MSB-first: bits[0] is the highest-degree coefficient.
// Encoding is systematic, message first, so bits 0..63 of a codeword
// are the message and bits 64..126 the parity.

namespace noisepulse {

inline constexpr std::size_t kBchLength = 127;
inline constexpr std::size_t kBchDimension = 64;
inline constexpr std::size_t kBchRadius = 10;

struct BchDecodeResult {
    std::vector<std::uint8_t> message; // kBchDimension bits
    std::size_t n_corrected = 0;
};

// message: kBchDimension entries of 0/1. Throws ParameterError on any
// other length.
std::vector<std::uint8_t> bch_encode(const std::vector<std::uint8_t>& message);

// word: kBchLength entries of 0/1. Empty optional means the word is
// more than kBchRadius flips from every codeword the decoder can see
// (beyond-radius words may instead miscorrect to a near codeword, which
// no bounded-distance decoder can detect).
std::optional<BchDecodeResult> bch_decode(const std::vector<std::uint8_t>& word);

} // namespace noisepulse
