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
#include "csimap/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace csimap;

TEST_CASE("draw_shadow statistics")
{
    Rng rng = make_rng(5, Stream::Shadow);
    CHECK(draw_shadow(0.0, rng) == 1.0);

    constexpr int n = 1000000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double db = 10.0 * std::log10(draw_shadow(8.0, rng));
        sum += db;
        sq += db * db;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sq / n - mean * mean);
    CHECK(std::abs(mean) < 0.05);
    CHECK(std::abs(sd - 8.0) < 0.05);
}

TEST_CASE("large_scale_fading")
{
    CHECK(large_scale_fading(1.0, 1.0, 3.8) == 1.0);
    CHECK(large_scale_fading(4.0, 2.0, 2.0) == 1.0);
    CHECK(large_scale_fading(2.0, 10.0, 3.0) == doctest::Approx(0.002).epsilon(1e-15));
    CHECK(large_scale_fading(0.0, 3.0, 3.0) == 0.0);
    CHECK_THROWS_AS(large_scale_fading(1.0, 0.0, 3.0), std::domain_error);
    CHECK_THROWS_AS(large_scale_fading(1.0, -1.0, 3.0), std::domain_error);
    CHECK_THROWS_AS(large_scale_fading(-1.0, 1.0, 3.0), std::domain_error);
}

TEST_CASE("draw_fast_fading shape and moments")
{
    Rng rng = make_rng(6, Stream::FastFading);
    const CMatrix small = draw_fast_fading(2, 3, rng);
    CHECK(small.rows() == 2);
    CHECK(small.cols() == 3);

    const CMatrix h = draw_fast_fading(200, 200, rng);
    cplx mean = 0.0;
    for (auto v : h.data())
        mean += v;
    mean /= static_cast<double>(h.data().size());
    double var = 0.0, re = 0.0;
    for (auto v : h.data()) {
        var += std::norm(v - mean);
        re += std::pow(v.real() - mean.real(), 2);
    }
    var /= static_cast<double>(h.data().size());
    re /= static_cast<double>(h.data().size());
    CHECK(std::abs(var - 1.0) < 0.03);
    CHECK(std::abs(re - 0.5) < 0.02);
    CHECK(std::abs(mean) < 0.02);
}

TEST_CASE("assemble_channel")
{
    Rng rng = make_rng(7, Stream::FastFading);
    const CMatrix h = draw_fast_fading(5, 3, rng);
    CHECK(assemble_channel(h, std::vector<double>{1.0, 1.0, 1.0}) == h);

    CMatrix one(2, 1);
    one(0, 0) = cplx(1, 0);
    one(1, 0) = cplx(0, 1);
    const CMatrix g = assemble_channel(one, std::vector<double>{4.0});
    CHECK(g(0, 0) == cplx(2, 0));
    CHECK(g(1, 0) == cplx(0, 2));

    const CMatrix z = assemble_channel(h, std::vector<double>{1.0, 0.0, 2.0});
    for (std::size_t m = 0; m < 5; ++m) {
        CHECK(z(m, 1) == cplx(0.0));
        CHECK(z(m, 2) == h(m, 2) * std::sqrt(2.0));
    }
    CHECK_THROWS_AS(assemble_channel(h, std::vector<double>{1.0, 1.0}), DimensionError);
    CHECK_THROWS(assemble_channel(h, std::vector<double>{1.0, -1.0, 1.0}));
}

TEST_CASE("hardening_deviation")
{
    CMatrix g(1, 1);
    g(0, 0) = 1.0;
    CHECK(hardening_deviation(g, std::vector<double>{1.0}) == doctest::Approx(0.0));
    CHECK(hardening_deviation(CMatrix(8, 2), std::vector<double>{1.0, 0.5}) == doctest::Approx(1.0));
    CHECK_THROWS(hardening_deviation(CMatrix(8, 2), std::vector<double>{0.0, 0.0}));

    Rng rng = make_rng(8, Stream::FastFading);
    const std::vector<double> beta{1.0, 0.4, 0.1, 0.02};
    auto mean = [&](std::size_t m) {
        double total = 0.0;
        for (int d = 0; d < 50; ++d)
            total += hardening_deviation(ChannelRealization::draw(beta, m, rng).channel, beta);
        return total / 50.0;
    };
    const double d100 = mean(100);
    const double d10000 = mean(10000);
    const double ratio = d100 / d10000;
    CHECK(ratio >= 6.0);
    CHECK(ratio <= 14.0);

    double prev = 1e300;
    for (std::size_t m : {64u, 256u, 1024u, 4096u}) {
        const double d = mean(m);
        CHECK(d <= prev);
        prev = d;
    }
}

TEST_CASE("column energy approaches beta")
{
    Rng rng = make_rng(9, Stream::FastFading);
    const std::vector<double> beta{0.7, 3.0};
    const auto real = ChannelRealization::draw(beta, 10000, rng);
    for (std::size_t k = 0; k < beta.size(); ++k) {
        double e = 0.0;
        for (auto v : real.channel.col(k))
            e += std::norm(v);
        CHECK(std::abs(e / 10000.0 - beta[k]) < 0.05 * beta[k]);
    }
}

TEST_CASE("independent fast-fading draws are uncorrelated")
{
    Rng rng = make_rng(10, Stream::FastFading);
    const CMatrix a = draw_fast_fading(100000, 1, rng);
    const CMatrix b = draw_fast_fading(100000, 1, rng);
    cplx corr = 0.0;
    double ea = 0.0, eb = 0.0;
    for (std::size_t i = 0; i < 100000; ++i) {
        corr += a(i, 0) * std::conj(b(i, 0));
        ea += std::norm(a(i, 0));
        eb += std::norm(b(i, 0));
    }
    CHECK(std::abs(corr) / std::sqrt(ea * eb) < 0.02);
}

TEST_CASE("LargeScaleFading stores beta = z / r^gamma exactly")
{
    LargeScaleFading f(3, 2);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int bs = 0; bs < 3; ++bs)
        for (int cell = 0; cell < 3; ++cell)
            for (int k = 0; k < 2; ++k) {
                const double z = u(rng), r = u(rng);
                f.set(bs, cell, k, z, r, 3.0);
                CHECK(f.beta(bs, cell, k) == z / std::pow(r, 3.0));
                CHECK(f.at(bs, cell, k).z == z);
                CHECK(f.at(bs, cell, k).r == r);
            }
    const auto diag = f.diagonal(1, 2);
    CHECK(diag.size() == 2);
    CHECK(diag[1] == f.beta(1, 2, 1));
}
