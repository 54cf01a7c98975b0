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

#include "csimap/harness.hpp"

#include "csimap/downlink.hpp"
#include "csimap/errors.hpp"
#include "csimap/simd/kernels.hpp"
#include "csimap/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

namespace csimap {

std::vector<Position> mobility_step(std::span<const Position> positions, const FloorLayout &layout,
                                    double dwell_prob, Rng &rng)
{
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::uniform_int_distribution<int> direction(0, 3);
    const int n = layout.lattice_size();
    auto reflect = [n](int v) {
        if (v < 0)
            return n > 1 ? 1 : 0;
        if (v >= n)
            return n > 1 ? n - 2 : 0;
        return v;
    };
    std::vector<Position> out(positions.begin(), positions.end());
    for (auto &p : out) {
        if (uniform(rng) < dwell_prob)
            continue;
        static constexpr int dx[] = {1, -1, 0, 0};
        static constexpr int dy[] = {0, 0, 1, -1};
        const int d = direction(rng);
        p = layout.lattice_point(p.cell_id, reflect(p.ix + dx[d]), reflect(p.iy + dy[d]));
    }
    return out;
}

int SessionRecord::predictive() const
{
    return static_cast<int>(std::count_if(uts.begin(), uts.end(), [](const UtRecord &u) {
        return u.format == TddFormat::Predictive;
    }));
}

int SessionRecord::hits() const
{
    return static_cast<int>(std::count_if(uts.begin(), uts.end(), [](const UtRecord &u) {
        return u.outcome == UtOutcome::PredictiveHit;
    }));
}

double SessionRecord::mean_alpha() const
{
    double total = 0.0;
    for (const auto &c : cells)
        total += c.alpha;
    return cells.empty() ? 0.0 : total / static_cast<double>(cells.size());
}

double SessionRecord::mean_sum_rate() const
{
    double total = 0.0;
    for (const auto &c : cells)
        total += c.sum_rate;
    return cells.empty() ? 0.0 : total / static_cast<double>(cells.size());
}

Simulation::Simulation(ExperimentConfig config, Codebook codebook)
    : config_(std::move(config)), codebook_(std::move(codebook)),
      layout_((config_.validate(), config_.system), config_.mobility.grid_step),
      pilots_(PilotBook::dft(config_.system.pilot_length, config_.system.num_uts_per_cell)),
      num_cells_(config_.system.num_cells), num_uts_(config_.system.num_uts_per_cell),
      fading_(num_cells_, num_uts_)
{
    const auto seed = config_.system.rng_seed;
    mobility_rng_ = make_rng(seed, Stream::Mobility);
    fading_rng_ = make_rng(seed, Stream::FastFading);
    noise_rng_ = make_rng(seed, Stream::Noise);
    format_rng_ = make_rng(seed, Stream::Format);

    const std::size_t points = layout_.points_per_cell() * static_cast<std::size_t>(num_cells_);
    shadow_.resize(points * static_cast<std::size_t>(num_cells_));
    Rng shadow_rng = make_rng(seed, Stream::Shadow);
    for (auto &z : shadow_)
        z = draw_shadow(config_.system.shadow_sigma_db, shadow_rng);

    Rng placement = make_rng(seed, Stream::Placement);
    std::uniform_int_distribution<int> coord(0, layout_.lattice_size() - 1);
    const std::size_t total = static_cast<std::size_t>(num_cells_) * num_uts_;
    positions_.reserve(total);
    for (int l = 0; l < num_cells_; ++l) {
        for (int k = 0; k < num_uts_; ++k) {
            const int ix = coord(placement);
            const int iy = coord(placement);
            positions_.push_back(layout_.lattice_point(l, ix, iy));
        }
    }
    for (int l = 0; l < num_cells_; ++l)
        for (int k = 0; k < num_uts_; ++k)
            update_fading(l, k);

    maps_.assign(static_cast<std::size_t>(num_cells_), CsiMap(config_.map, codebook_.version()));
    measured_snr_.assign(total, std::nullopt);
    predictive_run_.assign(total, 0);
}

double Simulation::shadow(int bs, const Position &p) const
{
    const std::size_t points = layout_.points_per_cell() * static_cast<std::size_t>(num_cells_);
    return shadow_.at(static_cast<std::size_t>(bs) * points + layout_.point_index(p));
}

void Simulation::update_fading(int cell, int k)
{
    const Position &p = positions_[static_cast<std::size_t>(cell) * num_uts_ + k];
    const double gamma = config_.system.path_loss_exponent;
    for (int bs = 0; bs < num_cells_; ++bs) {
        const double z = layout_.couples(p, bs) ? shadow(bs, p) : 0.0;
        fading_.set(bs, cell, k, z, layout_.distance(p, bs), gamma);
    }
}

void Simulation::estimate_full(const std::vector<PilotIndicator> &indicators,
                               std::vector<double> &beta_hat,
                               std::vector<std::vector<CMatrix>> *channels,
                               std::vector<CMatrix> *estimates)
{
    const auto m = static_cast<std::size_t>(config_.system.num_antennas);
    const double tau_pu = config_.system.pilot_length * config_.system.uplink_snr;
    const auto &kern = simd::kernels();
    for (int j = 0; j < num_cells_; ++j) {
        std::vector<CMatrix> ch;
        ch.reserve(static_cast<std::size_t>(num_cells_));
        for (int l = 0; l < num_cells_; ++l) {
            const auto beta = fading_.diagonal(j, l);
            // Wall-isolated cells contribute an all-zero channel; skip the draw.
            if (std::all_of(beta.begin(), beta.end(), [](double b) { return b == 0.0; }))
                ch.emplace_back(m, static_cast<std::size_t>(num_uts_));
            else
                ch.push_back(assemble_channel(
                    draw_fast_fading(m, static_cast<std::size_t>(num_uts_), fading_rng_), beta));
        }
        const CMatrix y = received_pilot_signal(ch, indicators, pilots_, config_.system.uplink_snr,
                                                &noise_rng_);
        CMatrix est = ls_estimate(y, pilots_);
        for (int k = 0; k < num_uts_; ++k) {
            if (!indicators[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)])
                continue;
            const auto col = est.col(static_cast<std::size_t>(k));
            const double energy = kern.norm_sq(col.data(), col.size());
            beta_hat[static_cast<std::size_t>(j) * num_uts_ + k] =
                std::max(0.0, energy / (static_cast<double>(m) * tau_pu) - 1.0 / tau_pu);
        }
        if (channels != nullptr)
            (*channels)[static_cast<std::size_t>(j)] = std::move(ch);
        if (estimates != nullptr)
            (*estimates)[static_cast<std::size_t>(j)] = std::move(est);
    }
}

SessionRecord Simulation::run_session()
{
    ++session_;
    const auto &sys = config_.system;
    const std::size_t total = static_cast<std::size_t>(num_cells_) * num_uts_;
    const bool forced = config_.forced_hit_ratio.has_value();
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    SessionRecord rec;
    rec.session_index = session_;
    rec.num_uts = num_uts_;
    rec.uts.resize(total);
    rec.cells.resize(static_cast<std::size_t>(num_cells_));

    for (int j = 0; j < num_cells_; ++j) {
        for (int k = 0; k < num_uts_; ++k) {
            const double gain = std::sqrt(fading_.beta(j, j, k));
            rec.uts[static_cast<std::size_t>(j) * num_uts_ + k].truth = codebook_.quantize(gain);
        }
    }

    // (1) format decision, (3) prediction with fallback to a pilot.
    std::vector<PilotIndicator> indicators(static_cast<std::size_t>(num_cells_),
                                           PilotIndicator(static_cast<std::size_t>(num_uts_), 0));
    for (int j = 0; j < num_cells_; ++j) {
        for (int k = 0; k < num_uts_; ++k) {
            const std::size_t u = static_cast<std::size_t>(j) * num_uts_ + k;
            UtRecord &r = rec.uts[u];
            const double draw = uniform(format_rng_);
            if (forced) {
                if (measured_snr_[u] && draw < *config_.forced_hit_ratio) {
                    r.format = TddFormat::Predictive;
                    r.qcsi = r.truth;
                }
            } else {
                const bool refresh = predictive_run_[u] >= config_.refresh_period;
                r.format = decide_format(measured_snr_[u], sys.snr_threshold, refresh);
                if (refresh)
                    r.outcome = UtOutcome::ForcedInitiative;
                if (r.format == TddFormat::Predictive) {
                    const CsiMap &map = maps_[static_cast<std::size_t>(j)];
                    if (const auto q = map.try_predict(static_cast<UtId>(k))) {
                        r.qcsi = *q;
                        r.context = map.node(*map.cursor(static_cast<UtId>(k)))->qcsi;
                    } else {
                        r.format = TddFormat::Initiative;
                        r.outcome = UtOutcome::ForcedInitiative;
                    }
                }
            }
            if (r.format == TddFormat::Predictive) {
                r.hit = r.qcsi == r.truth;
                r.outcome = r.hit ? UtOutcome::PredictiveHit : UtOutcome::PredictiveMiss;
            } else {
                indicators[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = 1;
            }
        }
    }

    // (2) estimation under co-pilot contamination.
    const bool monte_carlo = config_.metric_path == MetricPath::MonteCarlo;
    std::vector<double> beta_hat(total, 0.0);
    std::vector<std::vector<CMatrix>> channels;
    std::vector<CMatrix> estimates;
    if (config_.estimation == EstimationMode::Full) {
        if (monte_carlo) {
            channels.resize(static_cast<std::size_t>(num_cells_));
            estimates.resize(static_cast<std::size_t>(num_cells_));
        }
        estimate_full(indicators, beta_hat, monte_carlo ? &channels : nullptr,
                      monte_carlo ? &estimates : nullptr);
    } else {
        for (int j = 0; j < num_cells_; ++j) {
            for (int k = 0; k < num_uts_; ++k) {
                if (!indicators[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)])
                    continue;
                double b = fading_.beta(j, j, k);
                for (int l = 0; l < num_cells_; ++l)
                    if (l != j && indicators[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)])
                        b += fading_.beta(j, l, k);
                beta_hat[static_cast<std::size_t>(j) * num_uts_ + k] = b;
            }
        }
    }
    for (std::size_t u = 0; u < total; ++u) {
        UtRecord &r = rec.uts[u];
        if (r.format == TddFormat::Initiative) {
            r.gain_estimate = std::sqrt(beta_hat[u]);
            r.qcsi = codebook_.quantize(r.gain_estimate);
        }
    }

    // (4)-(5) downlink metrics.
    std::vector<double> interferers;
    interferers.reserve(static_cast<std::size_t>(num_cells_));
    std::vector<std::vector<double>> realized;
    if (monte_carlo) {
        const auto m = static_cast<std::size_t>(sys.num_antennas);
        const double scale = std::sqrt(sys.pilot_length * sys.uplink_snr);
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        std::vector<CMatrix> precoders(static_cast<std::size_t>(num_cells_));
        for (int j = 0; j < num_cells_; ++j) {
            HybridChannel hybrid{estimates[static_cast<std::size_t>(j)],
                                 std::vector<ChannelSource>(static_cast<std::size_t>(num_uts_),
                                                            ChannelSource::Estimated)};
            for (int k = 0; k < num_uts_; ++k) {
                const UtRecord &r = rec.uts[static_cast<std::size_t>(j) * num_uts_ + k];
                if (r.format != TddFormat::Predictive)
                    continue;
                hybrid.source[static_cast<std::size_t>(k)] = ChannelSource::Predicted;
                const double amp = scale * dequantize(r.qcsi, codebook_).gain;
                for (auto &v : hybrid.estimate.col(static_cast<std::size_t>(k))) {
                    const double re = normal(fading_rng_);
                    v = amp * cplx(re, normal(fading_rng_));
                }
            }
            // Unit-norm conjugate beams.
            for (std::size_t k = 0; k < hybrid.estimate.cols(); ++k) {
                auto col = hybrid.estimate.col(k);
                const double norm = std::sqrt(simd::kernels().norm_sq(col.data(), col.size()));
                if (norm > 0.0)
                    simd::kernels().scale(1.0 / norm, col.data(), col.size());
            }
            precoders[static_cast<std::size_t>(j)] = std::move(hybrid.estimate);
        }
        (void)m;
        realized = realized_sinr(channels, precoders, sys.downlink_snr, sys.sinr_cap);
    }

    for (int j = 0; j < num_cells_; ++j) {
        std::vector<double> sinr(static_cast<std::size_t>(num_uts_));
        for (int k = 0; k < num_uts_; ++k) {
            UtRecord &r = rec.uts[static_cast<std::size_t>(j) * num_uts_ + k];
            if (monte_carlo) {
                r.sinr = realized[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            } else {
                interferers.clear();
                for (int l = 0; l < num_cells_; ++l)
                    if (l != j && indicators[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)])
                        interferers.push_back(fading_.beta(l, j, k));
                r.sinr = asymptotic_sinr(fading_.beta(j, j, k), interferers, sys.sinr_cap);
            }
            sinr[static_cast<std::size_t>(k)] = r.sinr;
            if (config_.metric_mode == MetricMode::Penalized && r.outcome == UtOutcome::PredictiveMiss)
                sinr[static_cast<std::size_t>(k)] = 0.0;
        }
        const LinkMetrics link = sum_rate(sinr);
        CellRecord &cell = rec.cells[static_cast<std::size_t>(j)];
        cell.sum_rate = link.sum_rate;
        for (int k = 0; k < num_uts_; ++k) {
            UtRecord &r = rec.uts[static_cast<std::size_t>(j) * num_uts_ + k];
            r.rate = link.rate[static_cast<std::size_t>(k)];
            if (r.format == TddFormat::Initiative)
                ++cell.initiative;
        }
        cell.alpha = static_cast<double>(cell.initiative) / num_uts_;
    }

    int pilots_sent = 0;
    for (const auto &ind : indicators)
        for (auto s : ind)
            pilots_sent += s;
    rec.contaminating_cells = static_cast<double>(pilots_sent) / num_uts_;

    // (6) measured SNR, (7) learning from pilots.
    for (int j = 0; j < num_cells_; ++j) {
        for (int k = 0; k < num_uts_; ++k) {
            const std::size_t u = static_cast<std::size_t>(j) * num_uts_ + k;
            const UtRecord &r = rec.uts[u];
            measured_snr_[u] = r.outcome == UtOutcome::PredictiveMiss &&
                                       config_.metric_mode == MetricMode::Penalized
                                   ? 0.0
                                   : r.sinr;
            if (r.format == TddFormat::Predictive) {
                ++predictive_run_[u];
            } else {
                predictive_run_[u] = 0;
                maps_[static_cast<std::size_t>(j)].observe(static_cast<UtId>(k), r.qcsi);
            }
        }
    }

    // (8) garbage collection.
    if (session_ % config_.map.gc_period == 0)
        for (auto &map : maps_)
            map.garbage_collect();
    for (int j = 0; j < num_cells_; ++j) {
        rec.cells[static_cast<std::size_t>(j)].map_nodes = maps_[static_cast<std::size_t>(j)].node_count();
        rec.cells[static_cast<std::size_t>(j)].map_edges = maps_[static_cast<std::size_t>(j)].edge_count();
    }

    // (9) mobility.
    auto moved = mobility_step(positions_, layout_, config_.mobility.dwell_prob, mobility_rng_);
    for (std::size_t u = 0; u < total; ++u) {
        if (moved[u] == positions_[u])
            continue;
        positions_[u] = moved[u];
        update_fading(static_cast<int>(u / num_uts_), static_cast<int>(u % num_uts_));
    }
    return rec;
}

std::vector<double> windowed_hit_ratio(std::span<const int> hits, std::span<const int> attempts,
                                       int window)
{
    if (hits.size() != attempts.size())
        throw DimensionError("windowed_hit_ratio: series lengths differ");
    if (window < 1)
        throw std::invalid_argument("windowed_hit_ratio: window must be >= 1");
    std::vector<double> out(hits.size());
    long long h = 0;
    long long a = 0;
    for (std::size_t s = 0; s < hits.size(); ++s) {
        h += hits[s];
        a += attempts[s];
        if (s >= static_cast<std::size_t>(window)) {
            h -= hits[s - window];
            a -= attempts[s - window];
        }
        out[s] = a > 0 ? static_cast<double>(h) / static_cast<double>(a)
                       : std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

RunTrace run_trace(const ExperimentConfig &config, const Codebook &codebook,
                   std::optional<int> sessions)
{
    Simulation sim(config, codebook);
    return run_trace(sim, sessions.value_or(config.num_sessions));
}

RunTrace run_trace(Simulation &sim, int count)
{
    if (count < 1)
        throw std::invalid_argument("run_trace: session count must be >= 1");
    RunTrace t;
    t.hits.reserve(static_cast<std::size_t>(count));
    long long total_hits = 0;
    long long ut_sessions = 0;
    double rate_total = 0.0;
    for (int s = 0; s < count; ++s) {
        const SessionRecord rec = sim.run_session();
        t.hits.push_back(rec.hits());
        t.predictive.push_back(rec.predictive());
        t.alpha.push_back(rec.mean_alpha());
        t.sum_rate.push_back(rec.mean_sum_rate());
        t.contaminating_cells.push_back(rec.contaminating_cells);
        total_hits += t.hits.back();
        ut_sessions += static_cast<long long>(rec.uts.size());
        rate_total += t.sum_rate.back();
    }
    t.hit_ratio = windowed_hit_ratio(t.hits, t.predictive, sim.config().hit_window);
    t.mean_sum_rate = rate_total / count;
    t.prediction_rate = static_cast<double>(total_hits) / static_cast<double>(ut_sessions);
    return t;
}

namespace {

struct BandSetting {
    double dwell_prob;
    double threshold; // linear
    std::optional<double> forced;
};

ExperimentConfig apply(const ExperimentConfig &base, const BandSetting &b, double snr_db, int sessions)
{
    ExperimentConfig c = base;
    c.system.uplink_snr = db_to_linear(snr_db);
    c.system.downlink_snr = db_to_linear(snr_db);
    c.system.snr_threshold = b.threshold;
    c.mobility.dwell_prob = b.dwell_prob;
    c.forced_hit_ratio = b.forced;
    c.num_sessions = sessions;
    return c;
}

double realized_late_rate(const RunTrace &t, int num_uts_total)
{
    const std::size_t start = t.hits.size() / 2;
    long long h = 0;
    for (std::size_t s = start; s < t.hits.size(); ++s)
        h += t.hits[s];
    const auto n = static_cast<double>(t.hits.size() - start) * num_uts_total;
    return n > 0 ? static_cast<double>(h) / n : 0.0;
}

} // namespace

Metrics run_experiment(const ExperimentConfig &config, const Codebook &codebook)
{
    config.validate();
    Metrics m;
    m.primary = run_trace(config, codebook);

    const int uts_total = config.system.num_cells * config.system.num_uts_per_cell;
    const double nominal_db = linear_to_db(config.system.uplink_snr);

    // Search grid for mobility/threshold band placement, evaluated lazily.
    std::vector<BandSetting> grid;
    for (double dwell : {1.0, 0.95, 0.8, 0.5})
        for (double thr_db : {-30.0, 0.0, 20.0, 40.0, 55.0, 65.0})
            grid.push_back({dwell, db_to_linear(thr_db), std::nullopt});
    std::map<std::size_t, double> evaluated;
    auto evaluate = [&](std::size_t idx) -> std::optional<double> {
        if (auto it = evaluated.find(idx); it != evaluated.end())
            return it->second;
        if (evaluated.size() >= static_cast<std::size_t>(config.band_search_budget))
            return std::nullopt;
        const auto c = apply(config, grid[idx], nominal_db, config.band_search_sessions);
        const double rate = realized_late_rate(run_trace(c, codebook), uts_total);
        evaluated.emplace(idx, rate);
        return rate;
    };

    for (double band : config.hit_bands) {
        std::optional<BandSetting> setting;
        if (band <= 0.0) {
            setting = BandSetting{config.mobility.dwell_prob, kInfinity, std::nullopt};
        } else if (config.force_hit_ratio) {
            setting = BandSetting{config.mobility.dwell_prob, config.system.snr_threshold, band};
        } else {
            double best = config.band_tolerance;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const auto rate = evaluate(i);
                if (!rate)
                    continue;
                const double err = std::abs(*rate - band);
                if (err <= best) {
                    best = err;
                    setting = grid[i];
                }
            }
        }
        for (double snr_db : config.snr_sweep_db) {
            Fig6Row row;
            row.snr_db = snr_db;
            row.hit_band = band;
            if (!setting) {
                row.missing = true;
                m.fig6.push_back(row);
                continue;
            }
            row.dwell_prob = setting->dwell_prob;
            row.threshold_db = linear_to_db(setting->threshold);
            const auto t = run_trace(apply(config, *setting, snr_db, config.band_sessions), codebook);
            row.sum_rate = t.mean_sum_rate;
            row.realized_hit = t.prediction_rate;
            m.fig6.push_back(row);
        }
    }
    return m;
}

namespace {

// count strictly ascending quantiles at levels (q + 0.5) / count.
std::vector<double> seed_quantiles(std::vector<double> values, std::size_t count)
{
    std::sort(values.begin(), values.end());
    std::vector<double> out(count);
    for (std::size_t q = 0; q < count; ++q) {
        const double level = (static_cast<double>(q) + 0.5) / static_cast<double>(count);
        out[q] = values[std::min(values.size() - 1,
                                 static_cast<std::size_t>(level * static_cast<double>(values.size())))];
        if (q > 0 && out[q] <= out[q - 1])
            out[q] = out[q - 1] * (1.0 + 1e-3);
    }
    return out;
}

} // namespace

DesignResult train_codebook(const ExperimentConfig &config)
{
    config.validate();
    ExperimentConfig c = config;
    c.system.snr_threshold = kInfinity;
    c.forced_hit_ratio.reset();
    const double gamma = c.system.path_loss_exponent;
    Simulation sim(c, Codebook({1.0}, {1.0}, gamma, c.quantizer.version));

    std::vector<double> gains;
    std::vector<double> distances;
    for (int s = 0; s < c.quantizer.training_sessions; ++s) {
        for (const auto &p : sim.positions())
            distances.push_back(sim.layout().distance(p, p.cell_id));
        const SessionRecord rec = sim.run_session();
        for (const auto &u : rec.uts)
            gains.push_back(u.gain_estimate);
    }
    std::vector<double> shadows;
    const auto &layout = sim.layout();
    for (int cell = 0; cell < layout.num_cells(); ++cell)
        for (int iy = 0; iy < layout.lattice_size(); ++iy)
            for (int ix = 0; ix < layout.lattice_size(); ++ix)
                shadows.push_back(sim.shadow(cell, layout.lattice_point(cell, ix, iy)));

    DesignOptions opts;
    opts.max_iters = c.quantizer.max_iters;
    opts.tol = c.quantizer.tol;
    opts.seed = c.system.rng_seed;
    opts.version = c.quantizer.version;
    if (gains.size() >= static_cast<std::size_t>(c.quantizer.z_size) * c.quantizer.r_size) {
        opts.z_init = seed_quantiles(shadows, static_cast<std::size_t>(c.quantizer.z_size));
        opts.r_init = seed_quantiles(distances, static_cast<std::size_t>(c.quantizer.r_size));
    }
    return design_codebook(gains, c.quantizer.z_size, c.quantizer.r_size, gamma, opts);
}

namespace {

std::ofstream open_output(const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    return out;
}

std::string field(double v) { return std::isnan(v) ? std::string() : format_exact(v); }

} // namespace

void write_fig6_csv(const std::string &path, std::span<const Fig6Row> rows)
{
    auto out = open_output(path);
    out << "snr_db,hit_band,sum_rate_bits\r\n";
    for (const auto &r : rows)
        out << format_exact(r.snr_db) << ',' << format_exact(r.hit_band) << ','
            << (r.missing ? std::string() : format_exact(r.sum_rate)) << "\r\n";
}

void write_fig7_csv(const std::string &path, std::span<const double> hit_ratio)
{
    auto out = open_output(path);
    out << "session,windowed_hit_ratio\r\n";
    for (std::size_t s = 0; s < hit_ratio.size(); ++s)
        out << s + 1 << ',' << field(hit_ratio[s]) << "\r\n";
}

void write_alpha_csv(const std::string &path, std::span<const double> alpha)
{
    auto out = open_output(path);
    out << "session,alpha\r\n";
    for (std::size_t s = 0; s < alpha.size(); ++s)
        out << s + 1 << ',' << format_exact(alpha[s]) << "\r\n";
}

void write_run_meta(const std::string &path, const ExperimentConfig &config, const std::string &extra)
{
    auto out = open_output(path);
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(config_hash(config)));
    out << "seed " << config.system.rng_seed << '\n'
        << "config_hash " << hash << '\n'
        << "code_version " << kCodeVersion << '\n'
        << extra;
}

} // namespace csimap
