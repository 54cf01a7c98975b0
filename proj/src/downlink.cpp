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

#include "csimap/downlink.hpp"

#include "csimap/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csimap {

std::vector<cplx> precode_conjugate(const CMatrix &estimate, std::span<const cplx> symbols)
{
    if (symbols.size() != estimate.cols())
        throw DimensionError("precode_conjugate: need one symbol per column");
    std::vector<cplx> out(estimate.rows());
    const auto &k = simd::kernels();
    for (std::size_t u = 0; u < symbols.size(); ++u) {
        if (symbols[u] == cplx{})
            continue;
        k.axpy_conj(symbols[u], estimate.col(u).data(), out.data(), out.size());
    }
    return out;
}

std::vector<std::vector<cplx>> downlink_received(const std::vector<std::vector<CMatrix>> &channels,
                                                 std::span<const CMatrix> precoders,
                                                 std::span<const std::vector<cplx>> symbols,
                                                 double downlink_snr, Rng *noise_rng)
{
    const std::size_t num_cells = channels.size();
    if (precoders.size() != num_cells || symbols.size() != num_cells)
        throw DimensionError("downlink_received: need one precoder and symbol vector per cell");
    for (const auto &row : channels) {
        if (row.size() != num_cells)
            throw DimensionError("downlink_received: channels must be L x L");
    }

    std::vector<std::vector<cplx>> transmit(num_cells);
    for (std::size_t l = 0; l < num_cells; ++l)
        transmit[l] = precode_conjugate(precoders[l], symbols[l]);

    const auto &k = simd::kernels();
    const double amp = std::sqrt(downlink_snr);
    std::vector<std::vector<cplx>> received(num_cells);
    for (std::size_t j = 0; j < num_cells; ++j) {
        const std::size_t num_uts = channels[j][j].cols();
        received[j].assign(num_uts, cplx{});
        for (std::size_t l = 0; l < num_cells; ++l) {
            const CMatrix &g = channels[l][j];
            if (g.rows() != transmit[l].size() || g.cols() != num_uts)
                throw DimensionError("downlink_received: channel/precoder shape mismatch");
            for (std::size_t u = 0; u < num_uts; ++u)
                received[j][u] += amp * k.dotu(g.col(u).data(), transmit[l].data(), g.rows());
        }
        if (noise_rng != nullptr) {
            std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
            for (auto &v : received[j]) {
                const double re = normal(*noise_rng);
                const double im = normal(*noise_rng);
                v += cplx(re, im);
            }
        }
    }
    return received;
}

double asymptotic_sinr(double beta_own, std::span<const double> beta_interferers, double sinr_cap)
{
    double denom = 0.0;
    bool any_input = beta_own != 0.0;
    for (double b : beta_interferers) {
        denom += b * b;
        any_input = any_input || b != 0.0;
    }
    if (!any_input)
        throw std::domain_error("asymptotic_sinr: all large-scale coefficients are zero");
    const double signal = beta_own * beta_own;
    if (denom <= 1e-12 * signal)
        return sinr_cap;
    return std::min(signal / denom, sinr_cap);
}

std::vector<std::vector<double>>
realized_sinr(const std::vector<std::vector<CMatrix>> &channels, std::span<const CMatrix> precoders,
              double downlink_snr, double sinr_cap)
{
    const std::size_t num_cells = channels.size();
    if (precoders.size() != num_cells)
        throw DimensionError("realized_sinr: need one precoder per cell");
    const auto &k = simd::kernels();
    std::vector<std::vector<double>> sinr(num_cells);
    for (std::size_t j = 0; j < num_cells; ++j) {
        const std::size_t num_uts = channels[j][j].cols();
        sinr[j].assign(num_uts, 0.0);
        for (std::size_t u = 0; u < num_uts; ++u) {
            double signal = 0.0;
            double interference = 0.0;
            for (std::size_t l = 0; l < num_cells; ++l) {
                const CMatrix &g = channels[l][j];
                const CMatrix &w = precoders[l];
                if (g.rows() != w.rows())
                    throw DimensionError("realized_sinr: channel/precoder shape mismatch");
                const auto gu = g.col(u);
                for (std::size_t v = 0; v < w.cols(); ++v) {
                    const double p = std::norm(k.dotc(w.col(v).data(), gu.data(), gu.size()));
                    if (l == j && v == u)
                        signal = p;
                    else
                        interference += p;
                }
            }
            const double value = downlink_snr * signal / (downlink_snr * interference + 1.0);
            sinr[j][u] = std::min(value, sinr_cap);
        }
    }
    return sinr;
}

LinkMetrics sum_rate(std::span<const double> sinr)
{
    LinkMetrics out;
    out.sinr.assign(sinr.begin(), sinr.end());
    out.rate.reserve(sinr.size());
    for (double s : sinr) {
        if (s < 0.0 || std::isnan(s))
            throw std::domain_error("sum_rate: SINR must be >= 0");
        out.rate.push_back(std::log2(1.0 + s));
        out.sum_rate += out.rate.back();
    }
    return out;
}

} // namespace csimap
