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

#include "csimap/simd/kernels.hpp"

namespace csimap::simd {
namespace {

void axpy_scalar(cplx a, const cplx *x, cplx *y, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        y[i] += a * x[i];
}

void axpy_conj_scalar(cplx a, const cplx *x, cplx *y, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        y[i] += a * std::conj(x[i]);
}

cplx dotu_scalar(const cplx *x, const cplx *y, std::size_t n)
{
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    }
    return {re, im};
}

cplx dotc_scalar(const cplx *x, const cplx *y, std::size_t n)
{
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

double norm_sq_scalar(const cplx *x, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return acc;
}

void scale_scalar(double s, cplx *x, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        x[i] *= s;
}

} // namespace

const KernelTable &scalar_kernels()
{
    static const KernelTable table{
        "scalar",       &axpy_scalar,    &axpy_conj_scalar, &dotu_scalar,
        &dotc_scalar,   &norm_sq_scalar, &scale_scalar,
    };
    return table;
}

} // namespace csimap::simd
