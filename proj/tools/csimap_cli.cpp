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

#include "csimap/errors.hpp"
#include "csimap/experiment_config.hpp"
#include "csimap/harness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace csimap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

Codebook load_matching_codebook(const std::string &path, const ExperimentConfig &cfg)
{
    Codebook cb = Codebook::load(path);
    if (cb.gamma() != cfg.system.path_loss_exponent)
        throw ConfigError("codebook " + path + " was designed for gamma " +
                          std::to_string(cb.gamma()) + ", config uses " +
                          std::to_string(cfg.system.path_loss_exponent));
    return cb;
}

void prepare_dir(const std::string &dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
}

int design(const std::string &config_path, const std::string &out)
{
    const auto cfg = load_config(config_path);
    const auto result = train_codebook(cfg);
    result.codebook.save(out);
    std::cout << "codebook " << cfg.quantizer.z_size << "x" << cfg.quantizer.r_size
              << " iterations " << result.distortion.size() - 1 << " distortion "
              << result.distortion.back() << " -> " << out << '\n';
    return kExitOk;
}

int run(const std::string &config_path, const std::string &codebook_path, const std::string &dir,
        std::optional<double> forced, bool save_maps)
{
    auto cfg = load_config(config_path);
    if (forced) {
        cfg.forced_hit_ratio = forced;
        cfg.validate();
    }
    const auto cb = load_matching_codebook(codebook_path, cfg);
    prepare_dir(dir);
    Simulation sim(cfg, cb);
    const auto trace = run_trace(sim, cfg.num_sessions);
    write_fig7_csv((fs::path(dir) / "fig7.csv").string(), trace.hit_ratio);
    write_alpha_csv((fs::path(dir) / "alpha.csv").string(), trace.alpha);
    std::ostringstream extra;
    extra << "sessions " << cfg.num_sessions << '\n'
          << "mean_sum_rate " << trace.mean_sum_rate << '\n'
          << "prediction_rate " << trace.prediction_rate << '\n';
    write_run_meta((fs::path(dir) / "run_meta.txt").string(), cfg, extra.str());
    if (save_maps)
        for (int j = 0; j < cfg.system.num_cells; ++j)
            sim.map(j).save((fs::path(dir) / ("map_" + std::to_string(j) + ".txt")).string());
    std::cout << "sessions " << cfg.num_sessions << " mean sum-rate " << trace.mean_sum_rate
              << " prediction rate " << trace.prediction_rate << '\n';
    return kExitOk;
}

int sweep(const std::string &config_path, const std::string &codebook_path, const std::string &dir,
          bool force_hit)
{
    auto cfg = load_config(config_path);
    if (force_hit)
        cfg.force_hit_ratio = true;
    const auto cb = load_matching_codebook(codebook_path, cfg);
    prepare_dir(dir);
    const auto metrics = run_experiment(cfg, cb);
    write_fig6_csv((fs::path(dir) / "fig6.csv").string(), metrics.fig6);
    write_fig7_csv((fs::path(dir) / "fig7.csv").string(), metrics.primary.hit_ratio);
    write_alpha_csv((fs::path(dir) / "alpha.csv").string(), metrics.primary.alpha);
    std::ostringstream extra;
    for (const auto &row : metrics.fig6) {
        extra << "band " << row.hit_band << " snr_db " << row.snr_db;
        if (row.missing) {
            extra << " missing\n";
            std::cerr << "warning: hit band " << row.hit_band << " at " << row.snr_db
                      << " dB not reachable within the search budget\n";
            continue;
        }
        extra << " realized " << row.realized_hit << " dwell_prob " << row.dwell_prob
              << " threshold_db " << row.threshold_db << '\n';
    }
    write_run_meta((fs::path(dir) / "run_meta.txt").string(), cfg, extra.str());
    std::cout << "wrote fig6.csv, fig7.csv, alpha.csv to " << dir << '\n';
    return kExitOk;
}

int map_dump(const std::string &path)
{
    const CsiMap map = CsiMap::load(path);
    std::size_t self_loops = 0;
    std::size_t max_degree = 0;
    std::vector<std::size_t> histogram(10, 0);
    for (const auto &[id, node] : map.nodes()) {
        max_degree = std::max(max_degree, node.targets.size());
        for (std::size_t e = 0; e < node.targets.size(); ++e) {
            if (node.targets[e] == id)
                ++self_loops;
            const auto bin = std::min<std::size_t>(9, static_cast<std::size_t>(node.weights[e] * 10.0));
            ++histogram[bin];
        }
    }
    std::cout << "codebook_version " << map.codebook_version() << '\n'
              << "theta " << map.params().theta << '\n'
              << "gc_threshold " << map.params().gc_threshold << '\n'
              << "nodes " << map.node_count() << '\n'
              << "edges " << map.edge_count() << '\n'
              << "self_loops " << self_loops << '\n'
              << "max_out_degree " << max_degree << '\n'
              << "cursors " << map.cursors().size() << '\n'
              << "weight_histogram";
    for (auto c : histogram)
        std::cout << ' ' << c;
    std::cout << '\n';
    const std::string problem = map.check_invariants();
    std::cout << "invariants " << (problem.empty() ? "ok" : problem) << '\n';
    return problem.empty() ? kExitOk : kExitRuntime;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"csimap: CSI map learning and pilot mitigation simulator"};
    app.require_subcommand(1);

    std::string config_path, codebook_path, out_path, out_dir, map_path;
    std::optional<double> forced;
    bool force_hit = false;
    bool save_maps = false;

    auto *design_cmd = app.add_subcommand("design-codebook", "Train a codebook from simulated estimates");
    design_cmd->add_option("--config", config_path, "Config file")->required();
    design_cmd->add_option("--out", out_path, "Codebook output file")->required();

    auto *run_cmd = app.add_subcommand("run", "Run a single experiment");
    run_cmd->add_option("--config", config_path, "Config file")->required();
    run_cmd->add_option("--codebook", codebook_path, "Codebook file")->required();
    run_cmd->add_option("--out-dir", out_dir, "Output directory")->required();
    run_cmd->add_option("--force-hit-ratio", forced, "Inject correct predictions with this probability");
    run_cmd->add_flag("--save-maps", save_maps, "Write the final CSI map of every BS");

    auto *sweep_cmd = app.add_subcommand("sweep", "Sum-rate bands, hit-ratio and alpha traces");
    sweep_cmd->add_option("--config", config_path, "Config file")->required();
    sweep_cmd->add_option("--codebook", codebook_path, "Codebook file")->required();
    sweep_cmd->add_option("--out-dir", out_dir, "Output directory")->required();
    sweep_cmd->add_flag("--force-hit-ratio", force_hit, "Place hit bands by oracle injection");

    auto *dump_cmd = app.add_subcommand("map-dump", "Print CSI map statistics");
    dump_cmd->add_option("--map", map_path, "Map file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitConfig;
    }

    try {
        if (*design_cmd)
            return design(config_path, out_path);
        if (*run_cmd)
            return run(config_path, codebook_path, out_dir, forced, save_maps);
        if (*sweep_cmd)
            return sweep(config_path, codebook_path, out_dir, force_hit);
        return map_dump(map_path);
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
