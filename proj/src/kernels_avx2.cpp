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

// AVX2/FMA variants of the hot loops. Compiled with -mavx2 -mfma and only
// ever called after the CPUID check in the dispatcher.

#if defined(NOISEPULSE_HAVE_AVX2)

#include <cstddef>
#include <immintrin.h>

namespace noisepulse::kernels::detail {

namespace {

inline double hsum(__m256d v)
{
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Stride-2 load: returns [p[0], p[2], p[4], p[6]].
inline __m256d load_stride2(const double* p)
{
    __m256d v0 = _mm256_loadu_pd(p);     // p0 p1 p2 p3
    __m256d v1 = _mm256_loadu_pd(p + 4); // p4 p5 p6 p7
    __m256d t0 = _mm256_permute4x64_pd(v0, 0b11011000); // p0 p2 p1 p3
    __m256d t1 = _mm256_permute4x64_pd(v1, 0b11011000); // p4 p6 p5 p7
    return _mm256_permute2f128_pd(t0, t1, 0x20);        // p0 p2 p4 p6
}

} // namespace

double dot_avx2(const double* x, const double* y, std::size_t n)
{
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i)
        acc += x[i] * y[i];
    return acc;
}

double sum_squares_avx2(const double* x, std::size_t n)
{
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d a = _mm256_loadu_pd(x + i);
        __m256d b = _mm256_loadu_pd(x + i + 4);
        acc0 = _mm256_fmadd_pd(a, a, acc0);
        acc1 = _mm256_fmadd_pd(b, b, acc1);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i)
        acc += x[i] * x[i];
    return acc;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n)
{
    __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i)
        y[i] += a * x[i];
}

void conv8_decimate2_avx2(const double* in, const double* taps, double* out,
                          std::size_t n_out)
{
    // Four outputs per iteration. For output block k the tap-m operand is
    // the stride-2 gather starting at in + 2k + m; its underlying 8-wide
    // loads read through in[2k + 14], so the vector path stops one block
    // short of the caller's 2*(n_out-1) + 8 element guarantee and the
    // remainder runs scalar.
    __m256d t[8];
    for (int m = 0; m < 8; ++m)
        t[m] = _mm256_set1_pd(taps[m]);

    std::size_t k = 0;
    for (; k + 5 <= n_out; k += 4) {
        const double* base = in + 2 * k;
        __m256d acc = _mm256_mul_pd(t[0], load_stride2(base));
        acc = _mm256_fmadd_pd(t[1], load_stride2(base + 1), acc);
        acc = _mm256_fmadd_pd(t[2], load_stride2(base + 2), acc);
        acc = _mm256_fmadd_pd(t[3], load_stride2(base + 3), acc);
        acc = _mm256_fmadd_pd(t[4], load_stride2(base + 4), acc);
        acc = _mm256_fmadd_pd(t[5], load_stride2(base + 5), acc);
        acc = _mm256_fmadd_pd(t[6], load_stride2(base + 6), acc);
        acc = _mm256_fmadd_pd(t[7], load_stride2(base + 7), acc);
        _mm256_storeu_pd(out + k, acc);
    }
    for (; k < n_out; ++k) {
        const double* p = in + 2 * k;
        out[k] = taps[0] * p[0] + taps[1] * p[1] + taps[2] * p[2] +
                 taps[3] * p[3] + taps[4] * p[4] + taps[5] * p[5] +
                 taps[6] * p[6] + taps[7] * p[7];
    }
}

} // namespace noisepulse::kernels::detail

#endif // NOISEPULSE_HAVE_AVX2
