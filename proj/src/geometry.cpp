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

#include "csimap/geometry.hpp"

#include "csimap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace csimap {

FloorLayout::FloorLayout(const SystemConfig &config, double grid_step)
    : num_cells_(config.num_cells),
      columns_(static_cast<int>(std::ceil(std::sqrt(static_cast<double>(config.num_cells))))),
      side_(std::sqrt(config.cell_area)),
      band_(side_ * (1.0 - std::sqrt(1.0 - config.overlap_fraction)) / 2.0),
      min_distance_(config.min_distance)
{
    if (!(grid_step > 0.0) || !std::isfinite(grid_step))
        throw ConfigError("mobility.grid_step must be finite and > 0");
    lattice_ = std::max(1, static_cast<int>(std::lround(side_ / grid_step)));
}

Rect FloorLayout::cell_rect(int cell) const
{
    return {col(cell) * side_, row(cell) * side_, side_, side_};
}

Rect FloorLayout::floor_rect() const
{
    const int rows = (num_cells_ + columns_ - 1) / columns_;
    return {0.0, 0.0, columns_ * side_, rows * side_};
}

double FloorLayout::bs_x(int cell) const { return (col(cell) + 0.5) * side_; }
double FloorLayout::bs_y(int cell) const { return (row(cell) + 0.5) * side_; }

Position FloorLayout::lattice_point(int cell, int ix, int iy) const
{
    const Rect r = cell_rect(cell);
    const double spacing = side_ / lattice_;
    return {r.x0 + (ix + 0.5) * spacing, r.y0 + (iy + 0.5) * spacing, cell, ix, iy};
}

bool FloorLayout::edge_adjacent(int a, int b) const
{
    const int dr = std::abs(row(a) - row(b));
    const int dc = std::abs(col(a) - col(b));
    return dr + dc == 1;
}

bool FloorLayout::in_band_toward(const Position &p, int bs_cell) const
{
    if (bs_cell == p.cell_id || !edge_adjacent(p.cell_id, bs_cell))
        return false;
    const Rect r = cell_rect(p.cell_id);
    double gap;
    if (row(bs_cell) == row(p.cell_id))
        gap = col(bs_cell) > col(p.cell_id) ? (r.x0 + r.width) - p.x : p.x - r.x0;
    else
        gap = row(bs_cell) > row(p.cell_id) ? (r.y0 + r.height) - p.y : p.y - r.y0;
    return gap < band_;
}

double FloorLayout::distance(const Position &p, int bs_cell) const
{
    return std::max(min_distance_, std::hypot(p.x - bs_x(bs_cell), p.y - bs_y(bs_cell)));
}

} // namespace csimap
