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

#include "csimap/config.hpp"
#include "csimap/csi_map.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace csimap {

enum class MetricMode { PaperFaithful, Penalized };
enum class MetricPath { Asymptotic, MonteCarlo };
enum class EstimationMode { Full, Hardened };

struct QuantizerParams {
    int z_size = 4; // I
    int r_size = 4; // N
    int max_iters = 100;
    double tol = 1e-9;
    int training_sessions = 200;
    std::uint32_t version = 1;
};

struct MobilityParams {
    double grid_step = 0.5; // m
    double dwell_prob = 0.8;
};

struct ExperimentConfig {
    SystemConfig system;
    QuantizerParams quantizer;
    MapParams map;
    // The BS forces a pilot after this many consecutive predictive sessions of a UT.
    int refresh_period = 10;
    MobilityParams mobility;

    int num_sessions = 20000;
    std::vector<double> snr_sweep_db{-10.0, 0.0, 10.0, 20.0};
    int hit_window = 500;
    MetricMode metric_mode = MetricMode::PaperFaithful;
    MetricPath metric_path = MetricPath::Asymptotic;
    EstimationMode estimation = EstimationMode::Full;

    // Oracle band placement: a UT with history is served by an injected correct
    // prediction with probability h instead of consulting the map.
    bool force_hit_ratio = false;
    std::optional<double> forced_hit_ratio; // used by single runs
    std::vector<double> hit_bands{0.0, 0.25, 0.5, 0.75, 0.9};
    double band_tolerance = 0.05;
    int band_sessions = 2000;
    int band_search_sessions = 2000;
    int band_search_budget = 24;

    void validate() const;
};

// Flat key-value text with [system], [quantizer], [map], [mobility] and
// [experiment] sections. '#' starts a comment. Unknown sections or keys,
// malformed values and failed validation throw ConfigError.
ExperimentConfig parse_config(std::istream &in, const std::string &source = "<config>");
ExperimentConfig load_config(const std::string &path);

// Every field in a fixed order; stable input for the config hash.
std::string canonical_text(const ExperimentConfig &config);
std::uint64_t config_hash(const ExperimentConfig &config);

} // namespace csimap
