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

#include "noisepulse/kernels.hpp"

#include "noisepulse/errors.hpp"

namespace noisepulse::kernels {

namespace detail {

double dot_scalar(const double* x, const double* y, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += x[i] * y[i];
    return acc;
}

double sum_squares_scalar(const double* x, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += x[i] * x[i];
    return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        y[i] += a * x[i];
}

void conv8_decimate2_scalar(const double* in, const double* taps, double* out,
                            std::size_t n_out)
{
    for (std::size_t k = 0; k < n_out; ++k) {
        const double* p = in + 2 * k;
        out[k] = taps[0] * p[0] + taps[1] * p[1] + taps[2] * p[2] +
                 taps[3] * p[3] + taps[4] * p[4] + taps[5] * p[5] +
                 taps[6] * p[6] + taps[7] * p[7];
    }
}

#if defined(NOISEPULSE_HAVE_AVX2)
double dot_avx2(const double* x, const double* y, std::size_t n);
double sum_squares_avx2(const double* x, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void conv8_decimate2_avx2(const double* in, const double* taps, double* out,
                          std::size_t n_out);
#endif

struct KernelTable {
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum_squares)(const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*conv8_decimate2)(const double*, const double*, double*, std::size_t);
};

constexpr KernelTable kScalarTable = {dot_scalar, sum_squares_scalar,
                                      axpy_scalar, conv8_decimate2_scalar};

#if defined(NOISEPULSE_HAVE_AVX2)
constexpr KernelTable kAvx2Table = {dot_avx2, sum_squares_avx2, axpy_avx2,
                                    conv8_decimate2_avx2};
#endif

bool cpu_has_avx2()
{
#if defined(NOISEPULSE_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

struct Dispatch {
    const KernelTable* table;
    Isa isa;
    Dispatch()
    {
#if defined(NOISEPULSE_HAVE_AVX2)
        if (cpu_has_avx2()) {
            table = &kAvx2Table;
            isa = Isa::avx2;
            return;
        }
#endif
        table = &kScalarTable;
        isa = Isa::scalar;
    }
};

Dispatch& dispatch()
{
    static Dispatch d;
    return d;
}

} // namespace detail

Isa active_isa()
{
    return detail::dispatch().isa;
}

bool isa_supported(Isa isa)
{
    if (isa == Isa::scalar)
        return true;
    return detail::cpu_has_avx2();
}

void force_isa(Isa isa)
{
    if (!isa_supported(isa))
        throw ParameterError("requested instruction set not available on this CPU");
    auto& d = detail::dispatch();
    if (isa == Isa::scalar) {
        d.table = &detail::kScalarTable;
        d.isa = Isa::scalar;
        return;
    }
#if defined(NOISEPULSE_HAVE_AVX2)
    d.table = &detail::kAvx2Table;
    d.isa = Isa::avx2;
#endif
}

double dot(const double* x, const double* y, std::size_t n)
{
    return detail::dispatch().table->dot(x, y, n);
}

double sum_squares(const double* x, std::size_t n)
{
    return detail::dispatch().table->sum_squares(x, n);
}

void axpy(double a, const double* x, double* y, std::size_t n)
{
    detail::dispatch().table->axpy(a, x, y, n);
}

void conv8_decimate2(const double* in, const double* taps, double* out,
                     std::size_t n_out)
{
    detail::dispatch().table->conv8_decimate2(in, taps, out, n_out);
}

} // namespace noisepulse::kernels
