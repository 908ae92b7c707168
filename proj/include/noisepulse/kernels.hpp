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

// Data-parallel inner loops used by the signal-processing pipeline.
// Every kernel has a scalar reference implementation and may have an
// AVX2 variant; the active variant is chosen once at startup from CPUID
// and can be overridden (for equivalence tests) with force_isa().
//
// AVX2 results may differ from scalar in the last few ulps because of
// FMA contraction and reassociated accumulation; callers must not rely
// on bit-equality across ISAs.

namespace noisepulse::kernels {

enum class Isa { scalar, avx2 };

Isa active_isa();
bool isa_supported(Isa isa);
// Throws ParameterError if the requested ISA is not available on this CPU.
void force_isa(Isa isa);

double dot(const double* x, const double* y, std::size_t n);
double sum_squares(const double* x, std::size_t n);

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

// 8-tap correlation decimated by 2:
//
//     out[k] = sum_{m=0..7} taps[m] * in[2k + m],   k = 0 .. n_out-1
//
// The caller guarantees in[] holds at least 2*(n_out-1) + 8 elements.
// This is the analysis step of the wavelet cascade.
void conv8_decimate2(const double* in, const double* taps, double* out,
                     std::size_t n_out);

} // namespace noisepulse::kernels
