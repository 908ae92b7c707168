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

#include "noisepulse/bch.hpp"

#include <array>
#include <cstdlib>
#include <set>
#include <string>

#include "noisepulse/errors.hpp"

namespace noisepulse {

namespace {

constexpr unsigned kFieldPoly = 0x83; // x^7 + x + 1
constexpr unsigned kFieldOrder = 127; // nonzero elements of GF(2^7)
constexpr std::size_t kSyndromes = 2 * kBchRadius;

struct Tables {
    std::array<std::uint8_t, 2 * kFieldOrder> exp;
    std::array<std::uint8_t, kFieldOrder + 1> log;
    // Generator coefficients: taps[d] is the coefficient of x^d, with
    // the implicit leading x^63 omitted so the whole thing fits a
    // 63-bit shift register.
    std::uint64_t generator_taps = 0;

    Tables()
    {
        unsigned x = 1;
        log.fill(0);
        for (unsigned i = 0; i < kFieldOrder; ++i) {
            exp[i] = static_cast<std::uint8_t>(x);
            exp[i + kFieldOrder] = static_cast<std::uint8_t>(x);
            log[x] = static_cast<std::uint8_t>(i);
            x <<= 1;
            if (x & 0x80)
                x ^= kFieldPoly;
        }
        // The polynomial is primitive, so the powers of alpha must
        // visit every nonzero element exactly once.
        if (x != 1)
            std::abort();

        build_generator();
    }

    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const
    {
        if (a == 0 || b == 0)
            return 0;
        return exp[log[a] + log[b]];
    }

    std::uint8_t inv(std::uint8_t a) const
    {
        return exp[kFieldOrder - log[a]];
    }

    std::uint8_t pow_alpha(unsigned e) const
    {
        return exp[e % kFieldOrder];
    }

    void build_generator()
    {
        // Union of the cyclotomic cosets of 1..2t: these exponents are
        // the required roots alpha^1..alpha^20 plus their conjugates.
        std::set<unsigned> roots;
        for (unsigned j = 1; j <= kSyndromes; ++j) {
            unsigned e = j;
            do {
                roots.insert(e);
                e = (2 * e) % kFieldOrder;
            } while (e != j);
        }
        if (roots.size() != kBchLength - kBchDimension)
            std::abort();

        // Multiply out (x + alpha^e) over GF(2^7); the product of full
        // conjugate sets must come out with 0/1 coefficients.
        std::vector<std::uint8_t> g{1};
        for (unsigned e : roots) {
            std::vector<std::uint8_t> next(g.size() + 1, 0);
            const std::uint8_t root = pow_alpha(e);
            for (std::size_t i = 0; i < g.size(); ++i) {
                next[i] ^= mul(g[i], root);
                next[i + 1] ^= g[i];
            }
            g = std::move(next);
        }
        // g[i] is the coefficient of x^i, g.back() the leading term.
        if (g.size() != kBchLength - kBchDimension + 1 || g.back() != 1)
            std::abort();
        for (std::size_t i = 0; i + 1 < g.size(); ++i) {
            if (g[i] > 1)
                std::abort();
            if (g[i])
                generator_taps |= 1ULL << i;
        }
    }
};

const Tables& tables()
{
    static const Tables t;
    return t;
}

} // namespace

std::vector<std::uint8_t> bch_encode(const std::vector<std::uint8_t>& message)
{
    if (message.size() != kBchDimension)
        throw ParameterError("bch_encode: message must be " +
                             std::to_string(kBchDimension) + " bits, got " +
                             std::to_string(message.size()));
    const Tables& t = tables();

    // Systematic encoding as a division shift register: after feeding
    // the message the register holds m(x)*x^63 mod g(x), whose bits are
    // the parity tail.
    const std::size_t parity_bits = kBchLength - kBchDimension;
    std::uint64_t reg = 0;
    for (std::uint8_t bit : message) {
        const unsigned feedback =
            static_cast<unsigned>((reg >> (parity_bits - 1)) & 1) ^ (bit != 0);
        reg = (reg << 1) & ((1ULL << parity_bits) - 1);
        if (feedback)
            reg ^= t.generator_taps;
    }

    std::vector<std::uint8_t> codeword(kBchLength);
    for (std::size_t i = 0; i < kBchDimension; ++i)
        codeword[i] = message[i] ? 1 : 0;
    for (std::size_t i = 0; i < parity_bits; ++i)
        codeword[kBchDimension + i] =
            static_cast<std::uint8_t>((reg >> (parity_bits - 1 - i)) & 1);
    return codeword;
}

std::optional<BchDecodeResult> bch_decode(const std::vector<std::uint8_t>& word)
{
    if (word.size() != kBchLength)
        throw ParameterError("bch_decode: word must be " +
                             std::to_string(kBchLength) + " bits, got " +
                             std::to_string(word.size()));
    const Tables& t = tables();

    // Syndromes S_j = r(alpha^j); bit i carries degree 126 - i.
    std::array<std::uint8_t, kSyndromes> syndrome{};
    bool clean = true;
    for (unsigned j = 1; j <= kSyndromes; ++j) {
        std::uint8_t s = 0;
        for (std::size_t i = 0; i < kBchLength; ++i)
            if (word[i])
                s ^= t.pow_alpha(j * static_cast<unsigned>(kBchLength - 1 - i));
        syndrome[j - 1] = s;
        if (s)
            clean = false;
    }

    BchDecodeResult result;
    if (clean) {
        result.message.assign(word.begin(), word.begin() + kBchDimension);
        return result;
    }

    // Berlekamp-Massey: shortest LFSR generating the syndrome sequence
    // is the error locator.
    std::vector<std::uint8_t> locator{1};
    std::vector<std::uint8_t> prev{1};
    std::size_t errors = 0;
    unsigned shift = 1;
    std::uint8_t prev_discrepancy = 1;
    for (std::size_t n = 0; n < kSyndromes; ++n) {
        std::uint8_t d = syndrome[n];
        for (std::size_t i = 1; i <= errors && i < locator.size(); ++i)
            d ^= t.mul(locator[i], syndrome[n - i]);
        if (d == 0) {
            ++shift;
            continue;
        }
        const std::uint8_t scale = t.mul(d, t.inv(prev_discrepancy));
        std::vector<std::uint8_t> updated = locator;
        if (updated.size() < prev.size() + shift)
            updated.resize(prev.size() + shift, 0);
        for (std::size_t i = 0; i < prev.size(); ++i)
            updated[i + shift] ^= t.mul(scale, prev[i]);
        if (2 * errors <= n) {
            prev = std::move(locator);
            prev_discrepancy = d;
            errors = n + 1 - errors;
            shift = 1;
        } else {
            ++shift;
        }
        locator = std::move(updated);
    }
    if (errors > kBchRadius)
        return std::nullopt;

    // Chien search: a root at alpha^{-d} marks an error in the degree-d
    // coefficient.
    std::vector<std::size_t> flipped;
    for (unsigned d = 0; d < kBchLength; ++d) {
        std::uint8_t value = 0;
        for (std::size_t i = 0; i < locator.size(); ++i)
            if (locator[i])
                value ^= t.mul(
                    locator[i],
                    t.pow_alpha(static_cast<unsigned>(i) * (kFieldOrder - d)));
        if (value == 0)
            flipped.push_back(kBchLength - 1 - d);
    }
    if (flipped.size() != errors)
        return std::nullopt;

    std::vector<std::uint8_t> corrected = word;
    for (std::size_t i : flipped)
        corrected[i] ^= 1;

    // Bounded-distance sanity: the corrected word must be an actual
    // codeword, otherwise the locator was spurious.
    for (unsigned j = 1; j <= kSyndromes; ++j) {
        std::uint8_t s = 0;
        for (std::size_t i = 0; i < kBchLength; ++i)
            if (corrected[i])
                s ^= t.pow_alpha(j * static_cast<unsigned>(kBchLength - 1 - i));
        if (s != 0)
            return std::nullopt;
    }

    result.message.assign(corrected.begin(), corrected.begin() + kBchDimension);
    result.n_corrected = errors;
    return result;
}

} // namespace noisepulse
