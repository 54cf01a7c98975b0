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

#include <cstdint>
#include <random>

namespace csimap {

using Rng = std::mt19937_64;

// Independent named streams derived from one experiment seed, so that e.g.
// mobility draws do not shift when the number of noise draws changes.
enum class Stream : std::uint32_t {
    Shadow = 1,
    Placement = 2,
    Mobility = 3,
    FastFading = 4,
    Noise = 5,
    Format = 6,
    Quantizer = 7,
    Training = 8,
};

inline Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t salt = 0)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(salt),
                      static_cast<std::uint32_t>(salt >> 32)};
    return Rng(seq);
}

} // namespace csimap
