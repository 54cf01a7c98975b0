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

#include "csimap/channel_model.hpp"
#include "csimap/csi_map.hpp"
#include "csimap/experiment_config.hpp"
#include "csimap/geometry.hpp"
#include "csimap/quantizer.hpp"
#include "csimap/rng.hpp"
#include "csimap/uplink.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace csimap {

// Each UT stays with probability dwell_prob, otherwise takes one lattice step
// in a uniformly drawn cardinal direction. A step that would leave the home
// cell is reflected back inside it.
std::vector<Position> mobility_step(std::span<const Position> positions, const FloorLayout &layout,
                                    double dwell_prob, Rng &rng);

enum class UtOutcome : std::uint8_t { Initiative, PredictiveHit, PredictiveMiss, ForcedInitiative };

struct UtRecord {
    TddFormat format = TddFormat::Initiative; // after any forced fallback
    UtOutcome outcome = UtOutcome::Initiative;
    Qcsi qcsi;                  // observed when Initiative, predicted when Predictive
    Qcsi truth;                 // quantized true gain
    std::optional<Qcsi> context; // cursor QCSI the prediction was made from
    bool hit = false;           // meaningful only for Predictive
    double gain_estimate = 0.0; // sqrt of the estimated beta; Initiative only
    double sinr = 0.0;
    double rate = 0.0;
};

struct CellRecord {
    int initiative = 0;
    double alpha = 0.0; // initiative / K
    double sum_rate = 0.0;
    std::size_t map_nodes = 0;
    std::size_t map_edges = 0;
};

struct SessionRecord {
    int session_index = 0; // 1-based
    int num_uts = 0;       // K
    std::vector<UtRecord> uts; // cell-major
    std::vector<CellRecord> cells;
    // Mean over pilot indices of the number of cells transmitting that pilot.
    double contaminating_cells = 0.0;

    const UtRecord &ut(int cell, int k) const { return uts[static_cast<std::size_t>(cell) * num_uts + k]; }
    int predictive() const;
    int hits() const;
    double mean_alpha() const;
    double mean_sum_rate() const;
};

class Simulation {
public:
    Simulation(ExperimentConfig config, Codebook codebook);

    SessionRecord run_session();

    int sessions_run() const noexcept { return session_; }
    const ExperimentConfig &config() const noexcept { return config_; }
    const FloorLayout &layout() const noexcept { return layout_; }
    const Codebook &codebook() const noexcept { return codebook_; }
    std::span<const Position> positions() const noexcept { return positions_; }
    const LargeScaleFading &fading() const noexcept { return fading_; }
    const CsiMap &map(int bs) const { return maps_.at(static_cast<std::size_t>(bs)); }
    // Linear shadow value between a BS and a lattice point.
    double shadow(int bs, const Position &p) const;
    std::optional<double> measured_snr(int cell, int k) const
    {
        return measured_snr_[static_cast<std::size_t>(cell) * num_uts_ + k];
    }

private:
    void update_fading(int cell, int k);
    void estimate_full(const std::vector<PilotIndicator> &indicators, std::vector<double> &beta_hat,
                       std::vector<std::vector<CMatrix>> *channels, std::vector<CMatrix> *estimates);

    ExperimentConfig config_;
    Codebook codebook_;
    FloorLayout layout_;
    PilotBook pilots_;
    int num_cells_;
    int num_uts_;
    int session_ = 0;

    std::vector<double> shadow_; // [bs][point]
    std::vector<Position> positions_;
    LargeScaleFading fading_;
    std::vector<CsiMap> maps_;
    std::vector<std::optional<double>> measured_snr_;
    std::vector<int> predictive_run_; // consecutive predictive sessions per UT

    Rng mobility_rng_;
    Rng fading_rng_;
    Rng noise_rng_;
    Rng format_rng_;
};

// Windowed hit ratio over sessions (s - window, s]; NaN when the window holds
// no predictive attempt.
std::vector<double> windowed_hit_ratio(std::span<const int> hits, std::span<const int> attempts,
                                       int window);

struct RunTrace {
    std::vector<int> hits;           // per session
    std::vector<int> predictive;     // per session
    std::vector<double> alpha;       // per session, mean over cells
    std::vector<double> sum_rate;    // per session, mean per-cell sum-rate
    std::vector<double> contaminating_cells;
    std::vector<double> hit_ratio;   // windowed
    double mean_sum_rate = 0.0;
    double prediction_rate = 0.0;    // predictive hits / UT-sessions
};

// Runs config.num_sessions sessions (or the given count) and collects traces.
RunTrace run_trace(const ExperimentConfig &config, const Codebook &codebook,
                   std::optional<int> sessions = std::nullopt);
RunTrace run_trace(Simulation &sim, int sessions);

struct Fig6Row {
    double snr_db = 0.0;
    double hit_band = 0.0;
    bool missing = false;
    double sum_rate = 0.0;       // bits/s/Hz, mean per cell
    double realized_hit = 0.0;   // predictive hits / UT-sessions
    double dwell_prob = 0.0;
    double threshold_db = 0.0;
};

struct Metrics {
    RunTrace primary;
    std::vector<Fig6Row> fig6; // band-major, then sweep order
};

// Primary run plus the band sweep. Bands are placed by oracle injection when
// config.force_hit_ratio is set, otherwise by searching dwell_prob and the
// SNR threshold; a band that cannot be reached is marked missing.
Metrics run_experiment(const ExperimentConfig &config, const Codebook &codebook);

// Simulates all-pilot sessions to collect gain estimates, then designs the
// codebook seeded from distance and shadow quantiles.
DesignResult train_codebook(const ExperimentConfig &config);

inline constexpr const char *kCodeVersion = "csimap 1.0.0";

void write_fig6_csv(const std::string &path, std::span<const Fig6Row> rows);
void write_fig7_csv(const std::string &path, std::span<const double> hit_ratio);
void write_alpha_csv(const std::string &path, std::span<const double> alpha);
void write_run_meta(const std::string &path, const ExperimentConfig &config,
                    const std::string &extra = {});

} // namespace csimap
