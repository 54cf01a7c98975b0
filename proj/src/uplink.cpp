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

#include "csimap/uplink.hpp"

#include "csimap/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csimap {

TddFormat decide_format(std::optional<double> prev_downlink_snr, double snr_threshold,
                        bool force_pilot)
{
    if (force_pilot || !prev_downlink_snr)
        return TddFormat::Initiative;
    return *prev_downlink_snr < snr_threshold ? TddFormat::Initiative : TddFormat::Predictive;
}

int pilot_participation(int num_cells, double alpha)
{
    if (num_cells < 1)
        throw std::invalid_argument("pilot_participation: num_cells must be >= 1");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("pilot_participation: alpha must lie in [0, 1]");
    const auto rounded = static_cast<int>(std::floor(num_cells * alpha + 0.5));
    return std::clamp(rounded, 0, num_cells);
}

PilotBook PilotBook::dft(int pilot_length, int num_uts)
{
    if (pilot_length < 1 || num_uts < 1 || num_uts > pilot_length)
        throw std::invalid_argument("PilotBook::dft: need 1 <= K <= tau");
    CMatrix x(pilot_length, num_uts);
    const double norm = 1.0 / std::sqrt(static_cast<double>(pilot_length));
    for (int k = 0; k < num_uts; ++k) {
        for (int t = 0; t < pilot_length; ++t) {
            // Reduce t*k mod tau first to keep the phase argument small.
            const double phase = -2.0 * std::numbers::pi * ((t * k) % pilot_length) / pilot_length;
            x(t, k) = std::polar(norm, phase);
        }
    }
    return PilotBook(std::move(x));
}

PilotBook::PilotBook(CMatrix sequences) : sequences_(std::move(sequences)), orthonormal_(true)
{
    const auto &k = simd::kernels();
    for (std::size_t a = 0; a < sequences_.cols() && orthonormal_; ++a) {
        for (std::size_t b = a; b < sequences_.cols(); ++b) {
            const cplx ip = k.dotc(sequences_.col(a).data(), sequences_.col(b).data(),
                                   sequences_.rows());
            const double expected = a == b ? 1.0 : 0.0;
            if (std::abs(ip - expected) > 1e-9) {
                orthonormal_ = false;
                break;
            }
        }
    }
}

CMatrix received_pilot_signal(std::span<const CMatrix> channels,
                              std::span<const PilotIndicator> indicators, const PilotBook &pilots,
                              double uplink_snr, Rng *noise_rng)
{
    if (channels.size() != indicators.size())
        throw DimensionError("received_pilot_signal: one indicator vector per cell required");
    if (channels.empty())
        throw DimensionError("received_pilot_signal: no cells");
    const std::size_t m = channels.front().rows();
    const std::size_t num_uts = static_cast<std::size_t>(pilots.num_uts());
    const std::size_t tau = static_cast<std::size_t>(pilots.pilot_length());
    for (std::size_t l = 0; l < channels.size(); ++l) {
        if (channels[l].rows() != m || channels[l].cols() != num_uts ||
            indicators[l].size() != num_uts)
            throw DimensionError("received_pilot_signal: inconsistent channel/indicator shapes");
    }

    CMatrix y(m, tau);
    const auto &k = simd::kernels();
    const double gain = std::sqrt(static_cast<double>(tau) * uplink_snr);
    const CMatrix &x = pilots.sequences();
    for (std::size_t l = 0; l < channels.size(); ++l) {
        for (std::size_t u = 0; u < num_uts; ++u) {
            if (!indicators[l][u])
                continue;
            const auto g = channels[l].col(u);
            for (std::size_t t = 0; t < tau; ++t) {
                auto yt = y.col(t);
                k.axpy(gain * x(t, u), g.data(), yt.data(), m);
            }
        }
    }
    if (noise_rng != nullptr) {
        std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
        for (auto &v : y.data()) {
            const double re = normal(*noise_rng);
            const double im = normal(*noise_rng);
            v += cplx(re, im);
        }
    }
    return y;
}

CMatrix ls_estimate(const CMatrix &received, const PilotBook &pilots)
{
    if (!pilots.orthonormal())
        throw std::invalid_argument("ls_estimate: pilot book is not orthonormal");
    if (received.cols() != static_cast<std::size_t>(pilots.pilot_length()))
        throw DimensionError("ls_estimate: received signal must be M x tau");
    const std::size_t m = received.rows();
    const std::size_t tau = received.cols();
    const CMatrix &x = pilots.sequences();
    CMatrix est(m, x.cols());
    const auto &k = simd::kernels();
    for (std::size_t u = 0; u < x.cols(); ++u) {
        auto out = est.col(u);
        for (std::size_t t = 0; t < tau; ++t)
            k.axpy(std::conj(x(t, u)), received.col(t).data(), out.data(), m);
    }
    return est;
}

} // namespace csimap
