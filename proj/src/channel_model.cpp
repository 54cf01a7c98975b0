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

#include "csimap/channel_model.hpp"

#include "csimap/simd/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csimap {

double draw_shadow(double sigma_db, Rng &rng)
{
    if (sigma_db == 0.0)
        return 1.0;
    std::normal_distribution<double> normal(0.0, sigma_db);
    return std::pow(10.0, normal(rng) / 10.0);
}

double large_scale_fading(double z, double r, double gamma)
{
    if (!(r > 0.0))
        throw std::domain_error("large_scale_fading: distance must be > 0");
    if (z < 0.0)
        throw std::domain_error("large_scale_fading: shadow coefficient must be >= 0");
    return z / std::pow(r, gamma);
}

CMatrix draw_fast_fading(std::size_t num_antennas, std::size_t num_uts, Rng &rng)
{
    CMatrix h(num_antennas, num_uts);
    std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
    for (auto &v : h.data()) {
        const double re = normal(rng);
        const double im = normal(rng);
        v = {re, im};
    }
    return h;
}

CMatrix assemble_channel(const CMatrix &fast_fading, std::span<const double> beta)
{
    if (beta.size() != fast_fading.cols())
        throw DimensionError("assemble_channel: D must be K x K with K = H.cols()");
    CMatrix g = fast_fading;
    const auto &k = simd::kernels();
    for (std::size_t c = 0; c < beta.size(); ++c) {
        if (beta[c] < 0.0)
            throw std::domain_error("assemble_channel: negative large-scale coefficient");
        auto col = g.col(c);
        k.scale(std::sqrt(beta[c]), col.data(), col.size());
    }
    return g;
}

double hardening_deviation(const CMatrix &channel, std::span<const double> beta)
{
    if (beta.size() != channel.cols())
        throw DimensionError("hardening_deviation: D must be K x K with K = G.cols()");
    double d_norm = 0.0;
    for (double b : beta)
        d_norm += b * b;
    if (d_norm == 0.0)
        throw std::domain_error("hardening_deviation: D is all zero");

    const auto &k = simd::kernels();
    const double m = static_cast<double>(channel.rows());
    double diff = 0.0;
    for (std::size_t a = 0; a < channel.cols(); ++a) {
        const auto ca = channel.col(a);
        for (std::size_t b = 0; b < channel.cols(); ++b) {
            const auto cb = channel.col(b);
            cplx gram = k.dotc(ca.data(), cb.data(), ca.size()) / m;
            if (a == b)
                gram -= beta[a];
            diff += std::norm(gram);
        }
    }
    return std::sqrt(diff / d_norm);
}

LargeScaleFading::LargeScaleFading(int num_cells, int num_uts)
    : num_cells_(num_cells), num_uts_(num_uts),
      entries_(static_cast<std::size_t>(num_cells) * num_cells * num_uts)
{
}

void LargeScaleFading::set(int bs, int cell, int ut, double z, double r, double gamma)
{
    auto &e = entries_[index(bs, cell, ut)];
    e.beta = large_scale_fading(z, r, gamma);
    e.z = z;
    e.r = r;
}

std::vector<double> LargeScaleFading::diagonal(int bs, int cell) const
{
    std::vector<double> d(num_uts_);
    for (int k = 0; k < num_uts_; ++k)
        d[k] = beta(bs, cell, k);
    return d;
}

ChannelRealization ChannelRealization::draw(std::span<const double> beta,
                                            std::size_t num_antennas, Rng &rng)
{
    ChannelRealization out;
    out.fast_fading = draw_fast_fading(num_antennas, beta.size(), rng);
    out.beta.assign(beta.begin(), beta.end());
    out.channel = assemble_channel(out.fast_fading, out.beta);
    return out;
}

} // namespace csimap
