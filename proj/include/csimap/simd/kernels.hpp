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

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace csimap::simd {

using cplx = std::complex<double>;

// Inner loops over interleaved complex<double> arrays. Every backend must
// agree with the scalar reference to within accumulated rounding.
struct KernelTable {
    std::string_view name;

    // y += a * x
    void (*axpy)(cplx a, const cplx *x, cplx *y, std::size_t n);
    // y += a * conj(x)
    void (*axpy_conj)(cplx a, const cplx *x, cplx *y, std::size_t n);
    // sum x_i * y_i
    cplx (*dotu)(const cplx *x, const cplx *y, std::size_t n);
    // sum conj(x_i) * y_i
    cplx (*dotc)(const cplx *x, const cplx *y, std::size_t n);
    // sum |x_i|^2
    double (*norm_sq)(const cplx *x, std::size_t n);
    // x *= s
    void (*scale)(double s, cplx *x, std::size_t n);
};

enum class Backend { Auto, Scalar, Avx2 };

const KernelTable &scalar_kernels();

// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable *avx2_kernels();

bool cpu_supports_avx2();

// Active table. Resolved once on first use; select_backend() overrides it.
const KernelTable &kernels();

// Returns false (and leaves the table unchanged) when the backend is unavailable.
bool select_backend(Backend backend);

} // namespace csimap::simd
