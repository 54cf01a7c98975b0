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

#include "csimap/errors.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace csimap {

using cplx = std::complex<double>;

// Dense column-major complex matrix. Columns are contiguous so per-user
// vectors (one column per UT) go straight to the SIMD kernels.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n)
    {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    cplx &operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

    std::span<cplx> col(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
    std::span<const cplx> col(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

    std::span<cplx> data() noexcept { return data_; }
    std::span<const cplx> data() const noexcept { return data_; }

    void fill(cplx v)
    {
        for (auto &x : data_)
            x = v;
    }

    bool operator==(const CMatrix &) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

double frobenius_norm(const CMatrix &m);

// ||a - b||_F / ||b||_F; throws DimensionError on shape mismatch.
double relative_frobenius_error(const CMatrix &a, const CMatrix &b);

CMatrix operator+(const CMatrix &a, const CMatrix &b);
CMatrix operator*(double s, const CMatrix &m);

} // namespace csimap
