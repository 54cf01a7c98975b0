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

#include <cstddef>
#include <span>
#include <vector>

namespace csimap {

// Linear shadow coefficient whose dB value is N(0, sigma_db^2).
double draw_shadow(double sigma_db, Rng &rng);

// z / r^gamma. Throws std::domain_error for r <= 0 or z < 0.
double large_scale_fading(double z, double r, double gamma);

// M x K matrix of i.i.d. CN(0, 1) entries.
CMatrix draw_fast_fading(std::size_t num_antennas, std::size_t num_uts, Rng &rng);

// G = H * diag(beta)^(1/2).
CMatrix assemble_channel(const CMatrix &fast_fading, std::span<const double> beta);

// || G^H G / M - D ||_F / || D ||_F with M = G.rows().
double hardening_deviation(const CMatrix &channel, std::span<const double> beta);

struct FadingEntry {
    double z = 0.0;    // shadow (linear); 0 marks a wall-isolated pair
    double r = 1.0;    // BS-UT distance, m
    double beta = 0.0; // z / r^gamma
};

// Large-scale coefficients beta_{j,l,k}: BS j towards UT k of cell l.
class LargeScaleFading {
public:
    LargeScaleFading() = default;
    LargeScaleFading(int num_cells, int num_uts);

    int num_cells() const noexcept { return num_cells_; }
    int num_uts() const noexcept { return num_uts_; }

    const FadingEntry &at(int bs, int cell, int ut) const { return entries_[index(bs, cell, ut)]; }
    double beta(int bs, int cell, int ut) const { return entries_[index(bs, cell, ut)].beta; }

    // Stores z and r and recomputes beta from them.
    void set(int bs, int cell, int ut, double z, double r, double gamma);

    // K coefficients of the (bs, cell) pair, i.e. the diagonal of D_{bs,cell}.
    std::vector<double> diagonal(int bs, int cell) const;

private:
    std::size_t index(int bs, int cell, int ut) const
    {
        return (static_cast<std::size_t>(bs) * num_cells_ + cell) * num_uts_ + ut;
    }

    int num_cells_ = 0;
    int num_uts_ = 0;
    std::vector<FadingEntry> entries_;
};

// One block-fading draw for a (BS, cell) pair.
struct ChannelRealization {
    CMatrix fast_fading;      // H
    std::vector<double> beta; // diagonal of D
    CMatrix channel;          // G

    static ChannelRealization draw(std::span<const double> beta, std::size_t num_antennas,
                                   Rng &rng);
};

} // namespace csimap
