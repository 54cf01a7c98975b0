// csimap - CSI map learning and pilot mitigation for indoor massive MIMO
// Copyright (C) 2026 The csimap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Compiled with -mavx2 -mfma. Only reached through avx2_kernels(), which
// checks the CPU first.

#include "csimap/simd/kernels.hpp"

#include <immintrin.h>

namespace csimap::simd {
namespace {

inline const double *as_doubles(const cplx *p) { return reinterpret_cast<const double *>(p); }
inline double *as_doubles(cplx *p) { return reinterpret_cast<double *>(p); }

// Two complex values per register: [re0, im0, re1, im1].

void axpy_avx2(cplx a, const cplx *x, cplx *y, std::size_t n)
{
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(as_doubles(x + i));
        const __m256d vy = _mm256_loadu_pd(as_doubles(y + i));
        const __m256d swapped = _mm256_permute_pd(vx, 0b0101);
        const __m256d prod = _mm256_fmaddsub_pd(ar, vx, _mm256_mul_pd(ai, swapped));
        _mm256_storeu_pd(as_doubles(y + i), _mm256_add_pd(vy, prod));
    }
    for (; i < n; ++i)
        y[i] += a * x[i];
}

void axpy_conj_avx2(cplx a, const cplx *x, cplx *y, std::size_t n)
{
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(as_doubles(x + i));
        const __m256d vy = _mm256_loadu_pd(as_doubles(y + i));
        const __m256d swapped = _mm256_permute_pd(vx, 0b0101);
        // even: ai*xi + ar*xr, odd: ai*xr - ar*xi
        const __m256d prod = _mm256_fmsubadd_pd(ai, swapped, _mm256_mul_pd(ar, vx));
        _mm256_storeu_pd(as_doubles(y + i), _mm256_add_pd(vy, prod));
    }
    for (; i < n; ++i)
        y[i] += a * std::conj(x[i]);
}

// Accumulates A = sum x*re(y) and B = sum swap(x)*im(y) lane-wise; dotu and
// dotc differ only in how the lanes are recombined.
inline void dot_lanes(const cplx *x, const cplx *y, std::size_t n, double (&a)[4], double (&b)[4],
                      std::size_t &done)
{
    __m256d acc_a = _mm256_setzero_pd();
    __m256d acc_b = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(as_doubles(x + i));
        const __m256d vy = _mm256_loadu_pd(as_doubles(y + i));
        const __m256d yr = _mm256_movedup_pd(vy);
        const __m256d yi = _mm256_permute_pd(vy, 0b1111);
        acc_a = _mm256_fmadd_pd(vx, yr, acc_a);
        acc_b = _mm256_fmadd_pd(_mm256_permute_pd(vx, 0b0101), yi, acc_b);
    }
    _mm256_storeu_pd(a, acc_a);
    _mm256_storeu_pd(b, acc_b);
    done = i;
}

cplx dotu_avx2(const cplx *x, const cplx *y, std::size_t n)
{
    double a[4], b[4];
    std::size_t i = 0;
    dot_lanes(x, y, n, a, b, i);
    double re = (a[0] - b[0]) + (a[2] - b[2]);
    double im = (a[1] + b[1]) + (a[3] + b[3]);
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    }
    return {re, im};
}

cplx dotc_avx2(const cplx *x, const cplx *y, std::size_t n)
{
    double a[4], b[4];
    std::size_t i = 0;
    dot_lanes(x, y, n, a, b, i);
    double re = (a[0] + b[0]) + (a[2] + b[2]);
    double im = (b[1] - a[1]) + (b[3] - a[3]);
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

double norm_sq_avx2(const cplx *x, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(as_doubles(x + i));
        acc = _mm256_fmadd_pd(vx, vx, acc);
    }
    double lanes[4];
    _mm256_storeu_pd(lanes, acc);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i)
        total += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return total;
}

void scale_avx2(double s, cplx *x, std::size_t n)
{
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(as_doubles(x + i));
        _mm256_storeu_pd(as_doubles(x + i), _mm256_mul_pd(vx, vs));
    }
    for (; i < n; ++i)
        x[i] *= s;
}

} // namespace

const KernelTable &avx2_kernel_table()
{
    static const KernelTable table{
        "avx2",      &axpy_avx2,    &axpy_conj_avx2, &dotu_avx2,
        &dotc_avx2,  &norm_sq_avx2, &scale_avx2,
    };
    return table;
}

} // namespace csimap::simd
