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

#pragma once

#include "csimap/config.hpp"

#include <cstddef>
#include <vector>

namespace csimap {

struct Position {
    double x = 0.0;
    double y = 0.0;
    int cell_id = 0;
    // Lattice coordinates inside the cell; the map only learns if UTs revisit points.
    int ix = 0;
    int iy = 0;

    bool operator==(const Position &) const = default;
};

struct Rect {
    double x0, y0, width, height;
};

// Square cells of area cell_area tiled row-major on a near-square grid, one
// BS at each cell centre. Each cell carries a border band of width w with
// (a - 2w)^2 = (1 - overlap) a^2; a UT in the band along an edge shared with
// cell j is the only kind that couples to BS j.
class FloorLayout {
public:
    FloorLayout(const SystemConfig &config, double grid_step);

    int num_cells() const noexcept { return num_cells_; }
    int grid_columns() const noexcept { return columns_; }
    double cell_side() const noexcept { return side_; }
    double band_width() const noexcept { return band_; }
    int lattice_size() const noexcept { return lattice_; } // points per axis
    std::size_t points_per_cell() const noexcept
    {
        return static_cast<std::size_t>(lattice_) * lattice_;
    }

    Rect cell_rect(int cell) const;
    Rect floor_rect() const;
    double bs_x(int cell) const;
    double bs_y(int cell) const;

    Position lattice_point(int cell, int ix, int iy) const;
    std::size_t point_index(const Position &p) const
    {
        return static_cast<std::size_t>(p.cell_id) * points_per_cell() +
               static_cast<std::size_t>(p.iy) * lattice_ + p.ix;
    }

    bool edge_adjacent(int a, int b) const;
    // True when p lies in its cell's border band along the edge shared with bs_cell.
    bool in_band_toward(const Position &p, int bs_cell) const;
    bool couples(const Position &p, int bs_cell) const
    {
        return bs_cell == p.cell_id || in_band_toward(p, bs_cell);
    }

    // Euclidean distance to the BS of bs_cell, clamped below by min_distance.
    double distance(const Position &p, int bs_cell) const;

private:
    int row(int cell) const { return cell / columns_; }
    int col(int cell) const { return cell % columns_; }

    int num_cells_;
    int columns_;
    double side_;
    double band_;
    int lattice_;
    double min_distance_;
};

} // namespace csimap
