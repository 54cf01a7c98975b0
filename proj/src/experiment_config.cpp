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

#include "csimap/experiment_config.hpp"

#include "csimap/errors.hpp"
#include "csimap/text_io.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace csimap {

void ExperimentConfig::validate() const
{
    system.validate();
    auto require = [](bool ok, const std::string &what) {
        if (!ok)
            throw ConfigError(what);
    };
    require(quantizer.z_size >= 1 && quantizer.r_size >= 1, "quantizer sizes must be >= 1");
    require(quantizer.max_iters >= 0, "quantizer.max_iters must be >= 0");
    require(quantizer.tol >= 0.0, "quantizer.tol must be >= 0");
    require(quantizer.training_sessions >= 1, "quantizer.training_sessions must be >= 1");
    require(map.theta > 0.0 && map.theta < 1.0, "map.theta must lie in (0, 1)");
    require(map.gc_threshold >= 0.0 && map.gc_threshold < 1.0,
            "map.gc_threshold must lie in [0, 1)");
    require(map.gc_period >= 1, "map.gc_period must be >= 1");
    require(refresh_period >= 1, "map.refresh_period must be >= 1");
    require(mobility.grid_step > 0.0 && std::isfinite(mobility.grid_step),
            "mobility.grid_step must be > 0");
    require(mobility.dwell_prob >= 0.0 && mobility.dwell_prob <= 1.0,
            "mobility.dwell_prob must lie in [0, 1]");
    require(num_sessions >= 1, "experiment.num_sessions must be >= 1");
    require(!snr_sweep_db.empty(), "experiment.snr_sweep_db must not be empty");
    require(hit_window >= 1, "experiment.hit_window must be >= 1");
    require(!hit_bands.empty(), "experiment.hit_bands must not be empty");
    for (double b : hit_bands)
        require(b >= 0.0 && b <= 1.0, "experiment.hit_bands entries must lie in [0, 1]");
    if (forced_hit_ratio)
        require(*forced_hit_ratio >= 0.0 && *forced_hit_ratio <= 1.0,
                "experiment.forced_hit_ratio must lie in [0, 1]");
    require(band_tolerance >= 0.0, "experiment.band_tolerance must be >= 0");
    require(band_sessions >= 1 && band_search_sessions >= 1,
            "experiment band session counts must be >= 1");
    require(band_search_budget >= 0, "experiment.band_search_budget must be >= 0");
    require(metric_path != MetricPath::MonteCarlo || estimation == EstimationMode::Full,
            "experiment.metric_path = monte_carlo requires estimation = full");
}

namespace {

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct ValueParser {
    const std::string &source;
    std::size_t line;

    [[noreturn]] void fail(const std::string &what) const { throw ParseError(source, line, what); }

    double real(const std::string &v) const
    {
        if (v == "inf" || v == "+inf")
            return kInfinity;
        if (v == "-inf")
            return -kInfinity;
        char *end = nullptr;
        const double d = std::strtod(v.c_str(), &end);
        if (v.empty() || *end != '\0' || std::isnan(d))
            fail("invalid number '" + v + "'");
        return d;
    }

    long long integer(const std::string &v) const
    {
        char *end = nullptr;
        const long long i = std::strtoll(v.c_str(), &end, 10);
        if (v.empty() || *end != '\0')
            fail("invalid integer '" + v + "'");
        return i;
    }

    bool boolean(const std::string &v) const
    {
        if (v == "true" || v == "1" || v == "yes")
            return true;
        if (v == "false" || v == "0" || v == "no")
            return false;
        fail("invalid boolean '" + v + "'");
    }

    std::vector<double> list(const std::string &v) const
    {
        std::vector<double> out;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(real(trim(item)));
        return out;
    }
};

std::string mode_name(MetricMode m) { return m == MetricMode::Penalized ? "penalized" : "paper-faithful"; }
std::string path_name(MetricPath p) { return p == MetricPath::MonteCarlo ? "monte_carlo" : "asymptotic"; }
std::string estimation_name(EstimationMode e) { return e == EstimationMode::Hardened ? "hardened" : "full"; }

} // namespace

ExperimentConfig parse_config(std::istream &in, const std::string &source)
{
    ExperimentConfig cfg;
    using Setter = std::function<void(const ValueParser &, const std::string &)>;
    auto &sys = cfg.system;
    const std::map<std::string, std::map<std::string, Setter>> table = {
        {"system",
         {
             {"num_cells", [&](auto &p, auto &v) { sys.num_cells = static_cast<int>(p.integer(v)); }},
             {"num_antennas", [&](auto &p, auto &v) { sys.num_antennas = static_cast<int>(p.integer(v)); }},
             {"num_uts_per_cell", [&](auto &p, auto &v) { sys.num_uts_per_cell = static_cast<int>(p.integer(v)); }},
             {"pilot_length", [&](auto &p, auto &v) { sys.pilot_length = static_cast<int>(p.integer(v)); }},
             {"path_loss_exponent", [&](auto &p, auto &v) { sys.path_loss_exponent = p.real(v); }},
             {"shadow_sigma_db", [&](auto &p, auto &v) { sys.shadow_sigma_db = p.real(v); }},
             {"uplink_snr_db", [&](auto &p, auto &v) { sys.uplink_snr = db_to_linear(p.real(v)); }},
             {"downlink_snr_db", [&](auto &p, auto &v) { sys.downlink_snr = db_to_linear(p.real(v)); }},
             {"cell_area", [&](auto &p, auto &v) { sys.cell_area = p.real(v); }},
             {"overlap_fraction", [&](auto &p, auto &v) { sys.overlap_fraction = p.real(v); }},
             {"snr_threshold_db", [&](auto &p, auto &v) { sys.snr_threshold = db_to_linear(p.real(v)); }},
             {"min_distance", [&](auto &p, auto &v) { sys.min_distance = p.real(v); }},
             {"sinr_cap", [&](auto &p, auto &v) { sys.sinr_cap = p.real(v); }},
             {"seed", [&](auto &p, auto &v) { sys.rng_seed = static_cast<std::uint64_t>(p.integer(v)); }},
         }},
        {"quantizer",
         {
             {"z_size", [&](auto &p, auto &v) { cfg.quantizer.z_size = static_cast<int>(p.integer(v)); }},
             {"r_size", [&](auto &p, auto &v) { cfg.quantizer.r_size = static_cast<int>(p.integer(v)); }},
             {"max_iters", [&](auto &p, auto &v) { cfg.quantizer.max_iters = static_cast<int>(p.integer(v)); }},
             {"tol", [&](auto &p, auto &v) { cfg.quantizer.tol = p.real(v); }},
             {"training_sessions", [&](auto &p, auto &v) { cfg.quantizer.training_sessions = static_cast<int>(p.integer(v)); }},
             {"version", [&](auto &p, auto &v) { cfg.quantizer.version = static_cast<std::uint32_t>(p.integer(v)); }},
         }},
        {"map",
         {
             {"theta", [&](auto &p, auto &v) { cfg.map.theta = p.real(v); }},
             {"gc_threshold", [&](auto &p, auto &v) { cfg.map.gc_threshold = p.real(v); }},
             {"gc_period", [&](auto &p, auto &v) { cfg.map.gc_period = static_cast<int>(p.integer(v)); }},
             {"refresh_period", [&](auto &p, auto &v) { cfg.refresh_period = static_cast<int>(p.integer(v)); }},
         }},
        {"mobility",
         {
             {"grid_step", [&](auto &p, auto &v) { cfg.mobility.grid_step = p.real(v); }},
             {"dwell_prob", [&](auto &p, auto &v) { cfg.mobility.dwell_prob = p.real(v); }},
         }},
        {"experiment",
         {
             {"num_sessions", [&](auto &p, auto &v) { cfg.num_sessions = static_cast<int>(p.integer(v)); }},
             {"snr_sweep_db", [&](auto &p, auto &v) { cfg.snr_sweep_db = p.list(v); }},
             {"hit_window", [&](auto &p, auto &v) { cfg.hit_window = static_cast<int>(p.integer(v)); }},
             {"metric_mode",
              [&](auto &p, auto &v) {
                  if (v == "paper-faithful")
                      cfg.metric_mode = MetricMode::PaperFaithful;
                  else if (v == "penalized")
                      cfg.metric_mode = MetricMode::Penalized;
                  else
                      p.fail("metric_mode must be paper-faithful or penalized");
              }},
             {"metric_path",
              [&](auto &p, auto &v) {
                  if (v == "asymptotic")
                      cfg.metric_path = MetricPath::Asymptotic;
                  else if (v == "monte_carlo")
                      cfg.metric_path = MetricPath::MonteCarlo;
                  else
                      p.fail("metric_path must be asymptotic or monte_carlo");
              }},
             {"estimation",
              [&](auto &p, auto &v) {
                  if (v == "full")
                      cfg.estimation = EstimationMode::Full;
                  else if (v == "hardened")
                      cfg.estimation = EstimationMode::Hardened;
                  else
                      p.fail("estimation must be full or hardened");
              }},
             {"force_hit_ratio", [&](auto &p, auto &v) { cfg.force_hit_ratio = p.boolean(v); }},
             {"forced_hit_ratio",
              [&](auto &p, auto &v) {
                  if (v == "none")
                      cfg.forced_hit_ratio.reset();
                  else
                      cfg.forced_hit_ratio = p.real(v);
              }},
             {"hit_bands", [&](auto &p, auto &v) { cfg.hit_bands = p.list(v); }},
             {"band_tolerance", [&](auto &p, auto &v) { cfg.band_tolerance = p.real(v); }},
             {"band_sessions", [&](auto &p, auto &v) { cfg.band_sessions = static_cast<int>(p.integer(v)); }},
             {"band_search_sessions", [&](auto &p, auto &v) { cfg.band_search_sessions = static_cast<int>(p.integer(v)); }},
             {"band_search_budget", [&](auto &p, auto &v) { cfg.band_search_budget = static_cast<int>(p.integer(v)); }},
         }},
    };

    std::string raw;
    std::size_t line_no = 0;
    const std::map<std::string, Setter> *section = nullptr;
    std::string section_name;
    while (std::getline(in, raw)) {
        ++line_no;
        const ValueParser parser{source, line_no};
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                parser.fail("malformed section header");
            section_name = trim(line.substr(1, line.size() - 2));
            const auto it = table.find(section_name);
            if (it == table.end())
                parser.fail("unknown section [" + section_name + "]");
            section = &it->second;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            parser.fail("expected 'key = value'");
        if (section == nullptr)
            parser.fail("key outside of any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto setter = section->find(key);
        if (setter == section->end())
            parser.fail("unknown key '" + key + "' in [" + section_name + "]");
        setter->second(parser, value);
    }
    try {
        cfg.validate();
    } catch (const ParseError &) {
        throw;
    } catch (const ConfigError &e) {
        throw ConfigError(source + ": " + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    return parse_config(in, path);
}

std::string canonical_text(const ExperimentConfig &c)
{
    std::ostringstream out;
    const auto &s = c.system;
    auto list = [](const std::vector<double> &v) {
        std::string text;
        for (std::size_t i = 0; i < v.size(); ++i)
            text += (i ? "," : "") + format_exact(v[i]);
        return text;
    };
    out << "system " << s.num_cells << ' ' << s.num_antennas << ' ' << s.num_uts_per_cell << ' '
        << s.pilot_length << ' ' << format_exact(s.path_loss_exponent) << ' '
        << format_exact(s.shadow_sigma_db) << ' ' << format_exact(s.uplink_snr) << ' '
        << format_exact(s.downlink_snr) << ' ' << format_exact(s.cell_area) << ' '
        << format_exact(s.overlap_fraction) << ' ' << format_exact(s.snr_threshold) << ' '
        << format_exact(s.min_distance) << ' ' << format_exact(s.sinr_cap) << ' ' << s.rng_seed
        << '\n';
    out << "quantizer " << c.quantizer.z_size << ' ' << c.quantizer.r_size << ' '
        << c.quantizer.max_iters << ' ' << format_exact(c.quantizer.tol) << ' '
        << c.quantizer.training_sessions << ' ' << c.quantizer.version << '\n';
    out << "map " << format_exact(c.map.theta) << ' ' << format_exact(c.map.gc_threshold) << ' '
        << c.map.gc_period << ' ' << c.refresh_period << '\n';
    out << "mobility " << format_exact(c.mobility.grid_step) << ' '
        << format_exact(c.mobility.dwell_prob) << '\n';
    out << "experiment " << c.num_sessions << ' ' << list(c.snr_sweep_db) << ' ' << c.hit_window
        << ' ' << mode_name(c.metric_mode) << ' ' << path_name(c.metric_path) << ' '
        << estimation_name(c.estimation) << ' ' << c.force_hit_ratio << ' '
        << (c.forced_hit_ratio ? format_exact(*c.forced_hit_ratio) : "none") << ' '
        << list(c.hit_bands) << ' ' << format_exact(c.band_tolerance) << ' ' << c.band_sessions
        << ' ' << c.band_search_sessions << ' ' << c.band_search_budget << '\n';
    return out.str();
}

std::uint64_t config_hash(const ExperimentConfig &config)
{
    // FNV-1a, 64 bit.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical_text(config)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace csimap
