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

#include "csimap/quantizer.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace csimap {

using NodeId = std::uint32_t;
using UtId = std::uint32_t;

struct CsiNode {
    NodeId id = 0;
    Qcsi qcsi;
    // Outgoing edges as parallel arrays so the weights can be updated in place.
    std::vector<NodeId> targets;
    std::vector<double> weights;

    bool operator==(const CsiNode &) const = default;
};

struct TransitionReport {
    bool created_node = false;
    bool created_edge = false;
    NodeId node = 0;
};

struct GcReport {
    std::size_t edges_removed = 0;
    std::size_t nodes_removed = 0;
};

enum class PredictFailure { NoHistory, ColdNode };

class PredictionError : public std::runtime_error {
public:
    PredictionError(PredictFailure kind, const std::string &what)
        : std::runtime_error(what), kind_(kind)
    {
    }
    PredictFailure kind() const noexcept { return kind_; }

private:
    PredictFailure kind_;
};

struct MapParams {
    double theta = 0.1;        // learning step, in (0, 1)
    double gc_threshold = 0.02; // TH, in [0, 1)
    int gc_period = 1000;       // sessions between collections
};

// Winner gains theta' = min(theta, loser mass); each loser gives up its share
// of the loser mass times theta'. Sum and [0, 1] bounds are preserved.
void reinforce(std::span<double> weights, std::size_t winner, double theta);

// Weighted directed graph of QCSI nodes shared by all UTs of one BS, with a
// per-UT cursor at the node of that UT's last estimate.
class CsiMap {
public:
    explicit CsiMap(MapParams params = {}, std::uint32_t codebook_version = 1);

    // Adds the node for q if missing and, when the UT already has a cursor,
    // creates or reinforces the edge cursor -> node. A brand-new edge from a node
    // without outgoing edges starts at weight 1; otherwise it starts at 0 and
    // is reinforced as the winner. The cursor then moves to q's node.
    TransitionReport observe(UtId ut, Qcsi q);

    // QCSI at the end of the heaviest edge leaving the UT's cursor; ties go to
    // the smallest target id. Throws PredictionError.
    Qcsi predict(UtId ut) const;
    std::optional<Qcsi> try_predict(UtId ut, PredictFailure *why = nullptr) const;

    // Drops edges lighter than threshold, renormalises the survivors of each
    // node, then deletes nodes with no incident edge that no cursor points at.
    GcReport garbage_collect(double threshold);
    GcReport garbage_collect() { return garbage_collect(params_.gc_threshold); }

    // Forget everything; used when the codebook is rebuilt.
    void reset(std::uint32_t codebook_version);

    const MapParams &params() const noexcept { return params_; }
    std::uint32_t codebook_version() const noexcept { return codebook_version_; }

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const;
    const std::map<NodeId, CsiNode> &nodes() const noexcept { return nodes_; }
    const std::map<UtId, NodeId> &cursors() const noexcept { return cursors_; }
    const CsiNode *find(Qcsi q) const;
    const CsiNode *node(NodeId id) const;
    std::optional<NodeId> cursor(UtId ut) const;

    // Empty when every structural invariant holds, otherwise a description of
    // the first violation found.
    std::string check_invariants(double tolerance = 1e-9) const;

    // "CSIMAP v1 theta th codebook_version", then "N id i n", "E from to weight"
    // and "C ut node" lines. Weights and parameters use %.17g.
    void write(std::ostream &out) const;
    static CsiMap read(std::istream &in, const std::string &source = "<map>",
                       int gc_period = MapParams{}.gc_period);
    void save(const std::string &path) const;
    static CsiMap load(const std::string &path);

    bool operator==(const CsiMap &other) const
    {
        return params_.theta == other.params_.theta &&
               params_.gc_threshold == other.params_.gc_threshold &&
               codebook_version_ == other.codebook_version_ && nodes_ == other.nodes_ &&
               cursors_ == other.cursors_;
    }

private:
    MapParams params_;
    std::uint32_t codebook_version_;
    NodeId next_id_ = 0;
    std::map<NodeId, CsiNode> nodes_;
    std::map<Qcsi, NodeId> index_;
    std::map<UtId, NodeId> cursors_;
};

} // namespace csimap
