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
#include <limits>

namespace csimap {

// Scalar model parameters shared by every module. Powers are linear ratios.
struct SystemConfig {
    int num_cells = 6;          // L
    int num_antennas = 128;     // M
    int num_uts_per_cell = 8;   // K
    int pilot_length = 8;       // tau
    double path_loss_exponent = 3.0;
    double shadow_sigma_db = 8.0;
    double uplink_snr = 10.0;   // P_u
    double downlink_snr = 10.0; // P_d
    double cell_area = 50.0;    // m^2
    double overlap_fraction = 0.15;
    double snr_threshold = 10.0; // linear; +inf disables the predictive format
    double min_distance = 1.0;   // m
    double sinr_cap = 1e6;
    std::uint64_t rng_seed = 1;

    // Throws ConfigError naming the first offending field.
    void validate() const;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

double db_to_linear(double db);
double linear_to_db(double linear);

} // namespace csimap
