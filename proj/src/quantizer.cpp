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

#include "csimap/quantizer.hpp"

#include "csimap/errors.hpp"
#include "csimap/rng.hpp"
#include "csimap/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace csimap {

namespace {

void require_strictly_ascending_positive(const std::vector<double> &v, const char *what)
{
    if (v.empty())
        throw ConfigError(std::string("codebook: ") + what + " part is empty");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0) || !std::isfinite(v[i]))
            throw ConfigError(std::string("codebook: ") + what + " entries must be finite and > 0");
        if (i > 0 && !(v[i] > v[i - 1]))
            throw ConfigError(std::string("codebook: ") + what +
                              " entries must be strictly ascending");
    }
}

} // namespace

Codebook::Codebook(std::vector<double> z_values, std::vector<double> r_values, double gamma,
                   std::uint32_t version)
    : z_(std::move(z_values)), r_(std::move(r_values)), gamma_(gamma), version_(version)
{
    require_strictly_ascending_positive(z_, "Z");
    require_strictly_ascending_positive(r_, "R");
    if (!(gamma_ > 0.0) || !std::isfinite(gamma_))
        throw ConfigError("codebook: gamma must be finite and > 0");
    if (z_.size() > std::numeric_limits<std::uint16_t>::max() ||
        r_.size() > std::numeric_limits<std::uint16_t>::max())
        throw ConfigError("codebook: too many codewords");

    sorted_.reserve(z_.size() * r_.size());
    for (std::size_t i = 0; i < z_.size(); ++i) {
        for (std::size_t n = 0; n < r_.size(); ++n) {
            const Qcsi q{static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(n)};
            const double beta = induced_beta(q);
            if (!(beta > 0.0) || !std::isfinite(beta))
                throw ConfigError("codebook: induced codeword is not finite and positive");
            sorted_.push_back({beta, q});
        }
    }
    std::sort(sorted_.begin(), sorted_.end(), [](const Entry &a, const Entry &b) {
        return a.beta != b.beta ? a.beta < b.beta : a.q < b.q;
    });
}

double Codebook::induced_beta(Qcsi q) const { return z_.at(q.i) / std::pow(r_.at(q.n), gamma_); }

Qcsi Codebook::quantize(double gain) const
{
    const double y = gain * gain;
    auto hi = std::lower_bound(sorted_.begin(), sorted_.end(), y,
                               [](const Entry &e, double v) { return e.beta < v; });
    if (hi == sorted_.begin())
        return hi->q;
    if (hi == sorted_.end())
        hi = std::prev(hi);
    // The run of equal codewords just below y; its first element has the smallest (i, n).
    auto lo = hi->beta >= y ? std::prev(hi) : hi;
    while (lo != sorted_.begin() && std::prev(lo)->beta == lo->beta)
        --lo;
    const double d_lo = std::abs(y - lo->beta);
    const double d_hi = std::abs(hi->beta - y);
    if (d_lo < d_hi)
        return lo->q;
    if (d_hi < d_lo)
        return hi->q;
    return std::min(lo->q, hi->q);
}

void Codebook::write(std::ostream &out) const
{
    out << z_.size() << ' ' << r_.size() << ' ' << format_exact(gamma_) << ' ' << version_
        << '\n';
    for (double z : z_)
        out << format_exact(z) << '\n';
    for (double r : r_)
        out << format_exact(r) << '\n';
}

Codebook Codebook::read(std::istream &in, const std::string &source)
{
    LineReader reader(in, source);
    const auto header = reader.next_tokens("codebook header");
    if (header.size() != 4)
        reader.fail("expected header 'I N gamma version'");
    const auto z_size = reader.parse_count(header[0], "I");
    const auto r_size = reader.parse_count(header[1], "N");
    const double gamma = reader.parse_double(header[2], "gamma");
    const auto version = static_cast<std::uint32_t>(reader.parse_count(header[3], "version"));
    if (z_size == 0 || r_size == 0)
        reader.fail("I and N must be >= 1");

    auto read_values = [&](std::size_t count, const char *what) {
        std::vector<double> values;
        values.reserve(count);
        for (std::size_t k = 0; k < count; ++k) {
            const auto tokens = reader.next_tokens(what);
            if (tokens.size() != 1)
                reader.fail(std::string("expected one ") + what + " value per line");
            values.push_back(reader.parse_double(tokens[0], what));
        }
        return values;
    };
    auto z = read_values(z_size, "z");
    auto r = read_values(r_size, "r");
    if (reader.has_more())
        reader.fail("trailing content after codebook");
    try {
        return Codebook(std::move(z), std::move(r), gamma, version);
    } catch (const ConfigError &e) {
        reader.fail(e.what());
    }
}

void Codebook::save(const std::string &path) const
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write codebook file: " + path);
    write(out);
    if (!out)
        throw std::runtime_error("failed writing codebook file: " + path);
}

Codebook Codebook::load(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open codebook file: " + path);
    return read(in, path);
}

Qcsi quantize(double gain, const Codebook &codebook) { return codebook.quantize(gain); }

Dequantized dequantize(Qcsi q, const Codebook &codebook)
{
    if (!codebook.valid(q))
        throw std::out_of_range("dequantize: QCSI index outside the codebook");
    const double beta = codebook.induced_beta(q);
    return {std::sqrt(beta), beta};
}

Dequantized dequantize(Qcsi q, const Codebook &codebook, std::uint32_t expected_version)
{
    if (codebook.version() != expected_version)
        throw std::invalid_argument("dequantize: QCSI refers to codebook version " +
                                    std::to_string(expected_version) + ", have " +
                                    std::to_string(codebook.version()));
    return dequantize(q, codebook);
}

double mean_distortion(std::span<const double> gains, const Codebook &codebook)
{
    if (gains.empty())
        return 0.0;
    double total = 0.0;
    for (double g : gains)
        total += std::abs(g * g - codebook.induced_beta(codebook.quantize(g)));
    return total / static_cast<double>(gains.size());
}

namespace {

// Lowest minimiser of sum w_k |v_k - x|.
double weighted_median(std::vector<std::pair<double, double>> &value_weight)
{
    std::sort(value_weight.begin(), value_weight.end());
    double total = 0.0;
    for (const auto &[v, w] : value_weight)
        total += w;
    double acc = 0.0;
    for (const auto &[v, w] : value_weight) {
        acc += w;
        if (acc >= total / 2.0)
            return v;
    }
    return value_weight.back().first;
}

double geometric_mean(std::span<const double> v)
{
    double acc = 0.0;
    for (double x : v)
        acc += std::log(x);
    return std::exp(acc / static_cast<double>(v.size()));
}

bool strictly_ascending(const std::vector<double> &v)
{
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1]))
            return false;
    }
    return true;
}

// k-means++ over scalar samples: first pick uniform, then proportional to D^2.
std::vector<double> kmeanspp_1d(std::span<const double> samples, std::size_t count, Rng &rng)
{
    std::vector<double> centers;
    std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
    centers.push_back(samples[pick(rng)]);
    std::vector<double> d2(samples.size());
    while (centers.size() < count) {
        double total = 0.0;
        for (std::size_t s = 0; s < samples.size(); ++s) {
            double best = std::numeric_limits<double>::infinity();
            for (double c : centers)
                best = std::min(best, (samples[s] - c) * (samples[s] - c));
            d2[s] = best;
            total += best;
        }
        if (total == 0.0)
            break;
        std::uniform_real_distribution<double> u(0.0, total);
        const double target = u(rng);
        double acc = 0.0;
        std::size_t chosen = samples.size() - 1;
        for (std::size_t s = 0; s < samples.size(); ++s) {
            acc += d2[s];
            if (acc >= target && d2[s] > 0.0) {
                chosen = s;
                break;
            }
        }
        if (d2[chosen] == 0.0)
            break;
        centers.push_back(samples[chosen]);
    }
    return centers;
}

void seed_codebook(std::span<const double> ys, std::size_t z_size, std::size_t r_size,
                   double gamma, std::uint64_t seed, std::vector<double> &z, std::vector<double> &r)
{
    double min_positive = std::numeric_limits<double>::infinity();
    for (double y : ys) {
        if (y > 0.0)
            min_positive = std::min(min_positive, y);
    }
    if (!std::isfinite(min_positive))
        min_positive = 1.0;
    std::vector<double> logs(ys.size());
    for (std::size_t s = 0; s < ys.size(); ++s)
        logs[s] = std::log(std::max(ys[s], min_positive));
    const auto [lo_it, hi_it] = std::minmax_element(logs.begin(), logs.end());
    const double lo = *lo_it;
    const double span = std::max(*hi_it - lo, 1e-6);

    // Coarse (distance) levels in log-beta, finest spacing first.
    std::vector<double> coarse;
    double fine_span;
    if (r_size == 1) {
        coarse.push_back(lo + span / 2.0);
        fine_span = span;
    } else {
        Rng rng = make_rng(seed, Stream::Quantizer);
        coarse = kmeanspp_1d(logs, r_size, rng);
        if (coarse.size() < r_size) {
            coarse.clear();
            for (std::size_t n = 0; n < r_size; ++n)
                coarse.push_back(lo + span * (n + 0.5) / r_size);
        }
        std::sort(coarse.begin(), coarse.end());
        std::vector<double> gaps;
        for (std::size_t n = 1; n < coarse.size(); ++n)
            gaps.push_back(coarse[n] - coarse[n - 1]);
        std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
        fine_span = std::max(gaps[gaps.size() / 2], 1e-6);
    }

    r.clear();
    for (double c : coarse)
        r.push_back(std::exp(-c / gamma));
    std::sort(r.begin(), r.end());

    z.clear();
    for (std::size_t i = 0; i < z_size; ++i)
        z.push_back(std::exp(fine_span * ((i + 0.5) / static_cast<double>(z_size) - 0.5)));
}

} // namespace

DesignResult design_codebook(std::span<const double> training_gains, int z_size, int r_size,
                             double gamma, const DesignOptions &options)
{
    if (training_gains.empty())
        throw ConfigError("design_codebook: training set is empty");
    if (z_size < 1 || r_size < 1)
        throw ConfigError("design_codebook: I and N must be >= 1");
    const auto cells = static_cast<std::size_t>(z_size) * static_cast<std::size_t>(r_size);
    if (cells > training_gains.size())
        throw ConfigError("design_codebook: I*N = " + std::to_string(cells) +
                          " exceeds the number of training samples (" +
                          std::to_string(training_gains.size()) + ")");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw ConfigError("design_codebook: gamma must be finite and > 0");

    std::vector<double> ys(training_gains.size());
    for (std::size_t s = 0; s < ys.size(); ++s) {
        const double g = training_gains[s];
        if (!(g >= 0.0) || !std::isfinite(g))
            throw ConfigError("design_codebook: training gains must be finite and >= 0");
        ys[s] = g * g;
    }

    std::vector<double> z, r;
    if (!options.z_init.empty() || !options.r_init.empty()) {
        if (options.z_init.size() != static_cast<std::size_t>(z_size) ||
            options.r_init.size() != static_cast<std::size_t>(r_size))
            throw ConfigError("design_codebook: seed sizes must match I and N");
        z = options.z_init;
        r = options.r_init;
        std::sort(z.begin(), z.end());
        std::sort(r.begin(), r.end());
    } else {
        seed_codebook(ys, static_cast<std::size_t>(z_size), static_cast<std::size_t>(r_size),
                      gamma, options.seed, z, r);
    }

    Codebook codebook(z, r, gamma, options.version);
    const double r_anchor = geometric_mean(r);
    std::vector<double> history{mean_distortion(training_gains, codebook)};

    std::vector<Qcsi> assign(ys.size());
    std::vector<std::vector<std::pair<double, double>>> groups;
    for (int iter = 0; iter < options.max_iters; ++iter) {
        const double previous = history.back();
        if (previous == 0.0)
            break;

        for (std::size_t s = 0; s < ys.size(); ++s)
            assign[s] = codebook.quantize(training_gains[s]);

        std::vector<double> u(r.size());
        for (std::size_t n = 0; n < r.size(); ++n)
            u[n] = 1.0 / std::pow(r[n], gamma);

        // Z step: |y - z u| = u |y/u - z|, a weighted median in y/u.
        groups.assign(z.size(), {});
        for (std::size_t s = 0; s < ys.size(); ++s)
            groups[assign[s].i].emplace_back(ys[s] / u[assign[s].n], u[assign[s].n]);
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (groups[i].empty())
                continue;
            const double candidate = weighted_median(groups[i]);
            if (candidate > 0.0 && std::isfinite(candidate) &&
                std::find(z.begin(), z.end(), candidate) == z.end())
                z[i] = candidate;
        }

        // R step: |y - z u| = z |y/z - u|, a weighted median in y/z, then r = u^(-1/gamma).
        groups.assign(r.size(), {});
        for (std::size_t s = 0; s < ys.size(); ++s)
            groups[assign[s].n].emplace_back(ys[s] / z[assign[s].i], z[assign[s].i]);
        for (std::size_t n = 0; n < r.size(); ++n) {
            if (groups[n].empty())
                continue;
            const double best_u = weighted_median(groups[n]);
            if (!(best_u > 0.0))
                continue;
            const double candidate = std::pow(best_u, -1.0 / gamma);
            if (std::isfinite(candidate) && std::find(r.begin(), r.end(), candidate) == r.end())
                r[n] = candidate;
        }

        std::sort(z.begin(), z.end());
        std::sort(r.begin(), r.end());

        // Pin the distance scale; z / r^gamma is unchanged by the joint rescale.
        const double s = geometric_mean(r) / r_anchor;
        if (s != 1.0) {
            std::vector<double> z_scaled = z, r_scaled = r;
            const double z_factor = std::pow(s, -gamma);
            for (double &v : z_scaled)
                v *= z_factor;
            for (double &v : r_scaled)
                v /= s;
            if (strictly_ascending(z_scaled) && strictly_ascending(r_scaled)) {
                z = std::move(z_scaled);
                r = std::move(r_scaled);
            }
        }

        codebook = Codebook(z, r, gamma, options.version);
        const double current = mean_distortion(training_gains, codebook);
        history.push_back(current);
        if (previous - current <= options.tol * previous)
            break;
    }
    return {std::move(codebook), std::move(history)};
}

} // namespace csimap
