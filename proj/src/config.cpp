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

#include "csimap/config.hpp"

#include "csimap/errors.hpp"

#include <cmath>
#include <string>

namespace csimap {

namespace {

void require(bool ok, const char *field, const char *rule)
{
    if (!ok)
        throw ConfigError(std::string("system.") + field + " " + rule);
}

} // namespace

void SystemConfig::validate() const
{
    require(num_cells >= 1, "num_cells", "must be >= 1");
    require(num_antennas >= 1, "num_antennas", "must be >= 1");
    require(num_uts_per_cell >= 1, "num_uts_per_cell", "must be >= 1");
    require(pilot_length >= num_uts_per_cell, "pilot_length", "must be >= num_uts_per_cell");
    require(path_loss_exponent > 0.0 && std::isfinite(path_loss_exponent), "path_loss_exponent",
            "must be finite and > 0");
    require(shadow_sigma_db >= 0.0 && std::isfinite(shadow_sigma_db), "shadow_sigma_db",
            "must be finite and >= 0");
    require(uplink_snr > 0.0 && std::isfinite(uplink_snr), "uplink_snr", "must be finite and > 0");
    require(downlink_snr > 0.0 && std::isfinite(downlink_snr), "downlink_snr",
            "must be finite and > 0");
    require(cell_area > 0.0 && std::isfinite(cell_area), "cell_area", "must be finite and > 0");
    require(overlap_fraction >= 0.0 && overlap_fraction < 1.0, "overlap_fraction",
            "must lie in [0, 1)");
    require(snr_threshold >= 0.0, "snr_threshold", "must be >= 0");
    require(min_distance > 0.0 && std::isfinite(min_distance), "min_distance", "must be > 0");
    require(sinr_cap > 0.0 && std::isfinite(sinr_cap), "sinr_cap", "must be finite and > 0");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

} // namespace csimap
