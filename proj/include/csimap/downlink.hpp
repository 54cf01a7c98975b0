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

#include "csimap/cmatrix.hpp"
#include "csimap/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace csimap {

enum class ChannelSource : std::uint8_t { Estimated, Predicted, Stale };

// Precoding input of one BS: estimated columns from ls_estimate, predicted
// ones rebuilt from the CSI map.
struct HybridChannel {
    CMatrix estimate;                  // M x K
    std::vector<ChannelSource> source; // one tag per column
};

struct LinkMetrics {
    std::vector<double> sinr;
    std::vector<double> rate; // bits/s/Hz
    double sum_rate = 0.0;
};

inline constexpr double kDefaultSinrCap = 1e6;

// conj(G_hat) * x.
std::vector<cplx> precode_conjugate(const CMatrix &estimate, std::span<const cplx> symbols);

// Received downlink samples for the UTs of every cell:
//   y_j = sqrt(P_d) sum_l G_{l,j}^T conj(G_hat_l) x_l + w_j
// channels[l][j] is the M x K channel from BS l to the UTs of cell j.
// A null noise_rng gives w = 0.
std::vector<std::vector<cplx>> downlink_received(const std::vector<std::vector<CMatrix>> &channels,
                                                 std::span<const CMatrix> precoders,
                                                 std::span<const std::vector<cplx>> symbols,
                                                 double downlink_snr, Rng *noise_rng);

// beta_own^2 / sum beta_int^2, saturated at sinr_cap. An empty or vanishing
// interference sum returns the cap. Throws std::domain_error when every input is zero.
double asymptotic_sinr(double beta_own, std::span<const double> beta_interferers,
                       double sinr_cap = kDefaultSinrCap);

// Per-UT SINR of one conjugate-beamforming realization, treating every other
// stream (own cell and co-channel cells) as interference plus unit noise.
std::vector<std::vector<double>>
realized_sinr(const std::vector<std::vector<CMatrix>> &channels, std::span<const CMatrix> precoders,
              double downlink_snr, double sinr_cap = kDefaultSinrCap);

// rate_k = log2(1 + sinr_k). Throws std::domain_error for negative entries.
LinkMetrics sum_rate(std::span<const double> sinr);

} // namespace csimap
