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

#include "csimap/cmatrix.hpp"

#include "csimap/simd/kernels.hpp"

#include <cmath>

namespace csimap {

namespace {

void require_same_shape(const CMatrix &a, const CMatrix &b, const char *what)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError(std::string(what) + ": shape mismatch");
}

} // namespace

double frobenius_norm(const CMatrix &m)
{
    return std::sqrt(simd::kernels().norm_sq(m.data().data(), m.data().size()));
}

double relative_frobenius_error(const CMatrix &a, const CMatrix &b)
{
    require_same_shape(a, b, "relative_frobenius_error");
    double diff = 0.0;
    double ref = 0.0;
    const auto da = a.data();
    const auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) {
        diff += std::norm(da[i] - db[i]);
        ref += std::norm(db[i]);
    }
    if (ref == 0.0)
        return std::sqrt(diff);
    return std::sqrt(diff / ref);
}

CMatrix operator+(const CMatrix &a, const CMatrix &b)
{
    require_same_shape(a, b, "operator+");
    CMatrix out = a;
    simd::kernels().axpy(1.0, b.data().data(), out.data().data(), out.data().size());
    return out;
}

CMatrix operator*(double s, const CMatrix &m)
{
    CMatrix out = m;
    simd::kernels().scale(s, out.data().data(), out.data().size());
    return out;
}

} // namespace csimap
