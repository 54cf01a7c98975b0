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

#include <atomic>

namespace csimap::simd {

#if defined(CSIMAP_HAVE_AVX2)
const KernelTable &avx2_kernel_table();
#endif

bool cpu_supports_avx2()
{
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable *avx2_kernels()
{
#if defined(CSIMAP_HAVE_AVX2)
    if (cpu_supports_avx2())
        return &avx2_kernel_table();
#endif
    return nullptr;
}

namespace {

const KernelTable *resolve(Backend backend)
{
    switch (backend) {
    case Backend::Scalar:
        return &scalar_kernels();
    case Backend::Avx2:
        return avx2_kernels();
    case Backend::Auto:
        break;
    }
    if (const KernelTable *avx2 = avx2_kernels())
        return avx2;
    return &scalar_kernels();
}

std::atomic<const KernelTable *> &active()
{
    static std::atomic<const KernelTable *> table{resolve(Backend::Auto)};
    return table;
}

} // namespace

const KernelTable &kernels() { return *active().load(std::memory_order_acquire); }

bool select_backend(Backend backend)
{
    const KernelTable *table = resolve(backend);
    if (table == nullptr)
        return false;
    active().store(table, std::memory_order_release);
    return true;
}

} // namespace csimap::simd
