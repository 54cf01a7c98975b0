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
#include "csimap/geometry.hpp"
#include "csimap/harness.hpp"

#include <doctest.h>

#include <cmath>

using namespace csimap;

TEST_CASE("floor layout")
{
    SystemConfig cfg;
    const FloorLayout layout(cfg, 0.5);
    CHECK(layout.grid_columns() == 3);
    CHECK(layout.cell_side() == doctest::Approx(std::sqrt(50.0)));
    // The border band holds exactly the overlap fraction of the cell area.
    const double a = layout.cell_side(), w = layout.band_width();
    CHECK(1.0 - std::pow(a - 2.0 * w, 2) / (a * a) == doctest::Approx(0.15));
    CHECK(w == doctest::Approx(0.2753).epsilon(1e-3));
    CHECK(layout.lattice_size() == 14);
    CHECK(layout.bs_x(4) == doctest::Approx(1.5 * a));
    CHECK(layout.bs_y(4) == doctest::Approx(1.5 * a));

    CHECK(layout.edge_adjacent(0, 1));
    CHECK(layout.edge_adjacent(1, 4));
    CHECK_FALSE(layout.edge_adjacent(0, 4));
    CHECK_FALSE(layout.edge_adjacent(2, 3));
    CHECK_THROWS_AS(FloorLayout(cfg, 0.0), ConfigError);
}

TEST_CASE("lattice points and coupling")
{
    SystemConfig cfg;
    const FloorLayout layout(cfg, 0.5);
    const int n = layout.lattice_size();
    const Position east_edge = layout.lattice_point(0, n - 1, n / 2);
    const Rect r0 = layout.cell_rect(0);
    CHECK(east_edge.x < r0.x0 + r0.width);
    CHECK(r0.x0 + r0.width - east_edge.x < layout.band_width());
    CHECK(layout.couples(east_edge, 0));
    CHECK(layout.couples(east_edge, 1));
    CHECK_FALSE(layout.couples(east_edge, 3));
    CHECK_FALSE(layout.couples(east_edge, 4));

    const Position centre = layout.lattice_point(0, n / 2, n / 2);
    for (int bs = 1; bs < 6; ++bs)
        CHECK_FALSE(layout.couples(centre, bs));

    // Distances are clamped below by the minimum distance.
    CHECK(layout.distance(centre, 0) == doctest::Approx(1.0));
    const double dx = east_edge.x - layout.bs_x(1), dy = east_edge.y - layout.bs_y(1);
    CHECK(layout.distance(east_edge, 1) == doctest::Approx(std::hypot(dx, dy)));

    std::size_t index = 0;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            CHECK(layout.point_index(layout.lattice_point(2, ix, iy)) ==
                  2 * layout.points_per_cell() + index++);
}

TEST_CASE("band coverage matches the overlap fraction as the lattice refines")
{
    SystemConfig cfg;
    const FloorLayout layout(cfg, 0.01);
    const int n = layout.lattice_size();
    std::size_t in_band = 0;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const Position p = layout.lattice_point(4, ix, iy);
            bool any = false;
            for (int bs : {1, 3, 5, 7})
                if (bs < 6 && layout.in_band_toward(p, bs))
                    any = true;
            in_band += any;
        }
    // Cell 4 has three neighbours (1, 3, 5), so the band covers three of the four edges.
    const double a = layout.cell_side(), w = layout.band_width();
    const double expected = (a * a - (a - 2 * w) * (a - w)) / (a * a);
    CHECK(static_cast<double>(in_band) / (n * n) == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("mobility_step")
{
    SystemConfig cfg;
    const FloorLayout layout(cfg, 0.5);
    const int n = layout.lattice_size();
    std::vector<Position> pos;
    for (int c = 0; c < 6; ++c)
        for (int k = 0; k < 8; ++k)
            pos.push_back(layout.lattice_point(c, (k * 5) % n, (k * 3) % n));

    Rng rng = make_rng(1, Stream::Mobility);
    SUBCASE("frozen")
    {
        CHECK(mobility_step(pos, layout, 1.0, rng) == pos);
    }
    SUBCASE("always moving")
    {
        std::size_t moved = 0, total = 0;
        auto cur = pos;
        for (int s = 0; s < 10000 / 48 + 1; ++s) {
            const auto next = mobility_step(cur, layout, 0.0, rng);
            for (std::size_t u = 0; u < cur.size(); ++u) {
                moved += !(next[u] == cur[u]);
                ++total;
                const int step = std::abs(next[u].ix - cur[u].ix) + std::abs(next[u].iy - cur[u].iy);
                CHECK(step == 1);
            }
            cur = next;
        }
        CHECK(moved == total);
    }
    SUBCASE("reflection keeps UTs inside their cell")
    {
        std::vector<Position> corner{layout.lattice_point(0, 0, 0), layout.lattice_point(5, n - 1, n - 1)};
        for (int s = 0; s < 2000; ++s) {
            corner = mobility_step(corner, layout, 0.0, rng);
            for (const auto &p : corner) {
                const Rect r = layout.cell_rect(p.cell_id);
                CHECK(p.x > r.x0);
                CHECK(p.x < r.x0 + r.width);
                CHECK(p.y > r.y0);
                CHECK(p.y < r.y0 + r.height);
                CHECK(p.ix >= 0);
                CHECK(p.ix < n);
            }
            CHECK(corner[0].cell_id == 0);
            CHECK(corner[1].cell_id == 5);
        }
    }
    SUBCASE("dwell probability is honoured")
    {
        std::size_t moved = 0, total = 0;
        auto cur = pos;
        for (int s = 0; s < 2000; ++s) {
            const auto next = mobility_step(cur, layout, 0.8, rng);
            for (std::size_t u = 0; u < cur.size(); ++u)
                moved += !(next[u] == cur[u]);
            total += cur.size();
            cur = next;
        }
        CHECK(static_cast<double>(moved) / total == doctest::Approx(0.2).epsilon(0.03));
    }
}
