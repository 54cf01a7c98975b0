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
#include <optional>
#include <span>
#include <vector>

namespace csimap {

enum class TddFormat : std::uint8_t { Initiative, Predictive };

// Initiative without history, below threshold, or when the BS forces a pilot.
// snr == threshold counts as high and yields Predictive.
TddFormat decide_format(std::optional<double> prev_downlink_snr, double snr_threshold,
                        bool force_pilot = false);

// Cells sharing a pilot: round-half-up of L * alpha, clamped to [0, L].
int pilot_participation(int num_cells, double alpha);

// Per-cell pilot flags s_k; 1 = the UT sends its pilot this session.
using PilotIndicator = std::vector<std::uint8_t>;

// tau x K pilot matrix. UT k of every cell uses column k, so each sequence is
// reused exactly once per cell.
class PilotBook {
public:
    // First K columns of the normalized tau-point DFT matrix.
    static PilotBook dft(int pilot_length, int num_uts);

    // Arbitrary sequences; orthonormality is checked once here and enforced by ls_estimate.
    explicit PilotBook(CMatrix sequences);

    const CMatrix &sequences() const noexcept { return sequences_; }
    int pilot_length() const noexcept { return static_cast<int>(sequences_.rows()); }
    int num_uts() const noexcept { return static_cast<int>(sequences_.cols()); }
    bool orthonormal() const noexcept { return orthonormal_; }

private:
    CMatrix sequences_;
    bool orthonormal_;
};

// Y_p (M x tau) = sqrt(tau P_u) sum_l G_l diag(s_l) X^T + W at one BS.
// channels[l] is the M x K channel from this BS to the UTs of cell l. W is
// CN(0, 1) per entry drawn from noise_rng; a null noise_rng gives W = 0.
CMatrix received_pilot_signal(std::span<const CMatrix> channels,
                              std::span<const PilotIndicator> indicators, const PilotBook &pilots,
                              double uplink_snr, Rng *noise_rng);

// Least-squares estimate Y_p conj(X). The sqrt(tau P_u) gain is kept, so
// with no noise and a single active cell the result is sqrt(tau P_u) G.
CMatrix ls_estimate(const CMatrix &received, const PilotBook &pilots);

} // namespace csimap
