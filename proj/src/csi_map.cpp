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

#include "csimap/csi_map.hpp"

#include "csimap/errors.hpp"
#include "csimap/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace csimap {

void reinforce(std::span<double> weights, std::size_t winner, double theta)
{
    if (winner >= weights.size())
        throw std::out_of_range("reinforce: winner index out of range");
    double loser_mass = 0.0;
    for (std::size_t c = 0; c < weights.size(); ++c) {
        if (c != winner)
            loser_mass += weights[c];
    }
    // Equals min(theta, 1 - W_c) whenever the weights sum to one.
    const double step = std::min(theta, loser_mass);
    if (!(step > 0.0))
        return;
    for (std::size_t c = 0; c < weights.size(); ++c) {
        if (c != winner)
            weights[c] = std::max(0.0, weights[c] - weights[c] / loser_mass * step);
    }
    weights[winner] = std::min(1.0, weights[winner] + step);
}

CsiMap::CsiMap(MapParams params, std::uint32_t codebook_version)
    : params_(params), codebook_version_(codebook_version)
{
    if (!(params_.theta > 0.0 && params_.theta < 1.0))
        throw ConfigError("map.theta must lie in (0, 1)");
    if (!(params_.gc_threshold >= 0.0 && params_.gc_threshold < 1.0))
        throw ConfigError("map.gc_threshold must lie in [0, 1)");
    if (params_.gc_period < 1)
        throw ConfigError("map.gc_period must be >= 1");
}

TransitionReport CsiMap::observe(UtId ut, Qcsi q)
{
    TransitionReport report;
    auto [it, inserted] = index_.try_emplace(q, next_id_);
    if (inserted) {
        CsiNode node;
        node.id = next_id_++;
        node.qcsi = q;
        nodes_.emplace(node.id, std::move(node));
        report.created_node = true;
    }
    const NodeId target = it->second;
    report.node = target;

    auto cur = cursors_.find(ut);
    if (cur != cursors_.end()) {
        CsiNode &from = nodes_.at(cur->second);
        const auto pos = std::find(from.targets.begin(), from.targets.end(), target);
        if (pos != from.targets.end()) {
            reinforce(from.weights, static_cast<std::size_t>(pos - from.targets.begin()),
                      params_.theta);
        } else {
            report.created_edge = true;
            const bool first_edge = from.targets.empty();
            from.targets.push_back(target);
            from.weights.push_back(first_edge ? 1.0 : 0.0);
            if (!first_edge)
                reinforce(from.weights, from.weights.size() - 1, params_.theta);
        }
        cur->second = target;
    } else {
        cursors_.emplace(ut, target);
    }
    return report;
}

std::optional<Qcsi> CsiMap::try_predict(UtId ut, PredictFailure *why) const
{
    const auto cur = cursors_.find(ut);
    if (cur == cursors_.end()) {
        if (why)
            *why = PredictFailure::NoHistory;
        return std::nullopt;
    }
    const CsiNode &from = nodes_.at(cur->second);
    if (from.targets.empty()) {
        if (why)
            *why = PredictFailure::ColdNode;
        return std::nullopt;
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < from.targets.size(); ++c) {
        if (from.weights[c] > from.weights[best] ||
            (from.weights[c] == from.weights[best] && from.targets[c] < from.targets[best]))
            best = c;
    }
    return nodes_.at(from.targets[best]).qcsi;
}

Qcsi CsiMap::predict(UtId ut) const
{
    PredictFailure why{};
    if (auto q = try_predict(ut, &why))
        return *q;
    if (why == PredictFailure::NoHistory)
        throw PredictionError(why, "predict: UT " + std::to_string(ut) + " has no history");
    throw PredictionError(why, "predict: cursor node of UT " + std::to_string(ut) +
                                   " has no outgoing edges");
}

GcReport CsiMap::garbage_collect(double threshold)
{
    if (!(threshold >= 0.0 && threshold < 1.0))
        throw std::invalid_argument("garbage_collect: threshold must lie in [0, 1)");
    GcReport report;
    for (auto &[id, node] : nodes_) {
        std::size_t keep = 0;
        double kept_mass = 0.0;
        for (std::size_t c = 0; c < node.targets.size(); ++c) {
            if (node.weights[c] < threshold)
                continue;
            node.targets[keep] = node.targets[c];
            node.weights[keep] = node.weights[c];
            kept_mass += node.weights[c];
            ++keep;
        }
        if (keep == node.targets.size())
            continue;
        report.edges_removed += node.targets.size() - keep;
        node.targets.resize(keep);
        node.weights.resize(keep);
        for (double &w : node.weights)
            w /= kept_mass;
    }

    std::set<NodeId> referenced;
    for (const auto &[id, node] : nodes_) {
        if (!node.targets.empty())
            referenced.insert(id);
        referenced.insert(node.targets.begin(), node.targets.end());
    }
    for (const auto &[ut, id] : cursors_)
        referenced.insert(id);

    for (auto it = nodes_.begin(); it != nodes_.end();) {
        if (referenced.count(it->first)) {
            ++it;
            continue;
        }
        index_.erase(it->second.qcsi);
        it = nodes_.erase(it);
        ++report.nodes_removed;
    }
    return report;
}

void CsiMap::reset(std::uint32_t codebook_version)
{
    codebook_version_ = codebook_version;
    next_id_ = 0;
    nodes_.clear();
    index_.clear();
    cursors_.clear();
}

std::size_t CsiMap::edge_count() const
{
    std::size_t total = 0;
    for (const auto &[id, node] : nodes_)
        total += node.targets.size();
    return total;
}

const CsiNode *CsiMap::find(Qcsi q) const
{
    const auto it = index_.find(q);
    return it == index_.end() ? nullptr : &nodes_.at(it->second);
}

const CsiNode *CsiMap::node(NodeId id) const
{
    const auto it = nodes_.find(id);
    return it == nodes_.end() ? nullptr : &it->second;
}

std::optional<NodeId> CsiMap::cursor(UtId ut) const
{
    const auto it = cursors_.find(ut);
    if (it == cursors_.end())
        return std::nullopt;
    return it->second;
}

std::string CsiMap::check_invariants(double tolerance) const
{
    std::ostringstream err;
    std::set<Qcsi> seen;
    for (const auto &[id, node] : nodes_) {
        if (node.id != id)
            err << "node " << id << " stores id " << node.id << "; ";
        if (!seen.insert(node.qcsi).second)
            err << "duplicate QCSI (" << node.qcsi.i << "," << node.qcsi.n << "); ";
        const auto idx = index_.find(node.qcsi);
        if (idx == index_.end() || idx->second != id)
            err << "index out of sync for node " << id << "; ";
        if (node.targets.size() != node.weights.size())
            err << "node " << id << " has mismatched edge arrays; ";
        std::set<NodeId> targets;
        double sum = 0.0;
        for (std::size_t c = 0; c < node.targets.size(); ++c) {
            if (!targets.insert(node.targets[c]).second)
                err << "duplicate edge " << id << "->" << node.targets[c] << "; ";
            if (!nodes_.count(node.targets[c]))
                err << "edge " << id << "->" << node.targets[c] << " points nowhere; ";
            if (!(node.weights[c] >= 0.0 && node.weights[c] <= 1.0))
                err << "weight " << node.weights[c] << " out of [0,1] on " << id << "; ";
            sum += node.weights[c];
        }
        if (!node.targets.empty() && std::abs(sum - 1.0) > tolerance)
            err << "out-weights of node " << id << " sum to " << format_exact(sum) << "; ";
        if (err.tellp() > 0)
            break;
    }
    if (index_.size() != nodes_.size())
        err << "index has " << index_.size() << " entries for " << nodes_.size() << " nodes; ";
    for (const auto &[ut, id] : cursors_) {
        if (!nodes_.count(id))
            err << "cursor of UT " << ut << " dangles at " << id << "; ";
    }
    return err.str();
}

void CsiMap::write(std::ostream &out) const
{
    out << "CSIMAP v1 " << format_exact(params_.theta) << ' ' << format_exact(params_.gc_threshold)
        << ' ' << codebook_version_ << '\n';
    for (const auto &[id, node] : nodes_)
        out << "N " << id << ' ' << node.qcsi.i << ' ' << node.qcsi.n << '\n';
    for (const auto &[id, node] : nodes_) {
        for (std::size_t c = 0; c < node.targets.size(); ++c)
            out << "E " << id << ' ' << node.targets[c] << ' ' << format_exact(node.weights[c])
                << '\n';
    }
    for (const auto &[ut, id] : cursors_)
        out << "C " << ut << ' ' << id << '\n';
}

CsiMap CsiMap::read(std::istream &in, const std::string &source, int gc_period)
{
    LineReader reader(in, source);
    const auto header = reader.next_tokens("map header");
    if (header.size() != 5 || header[0] != "CSIMAP" || header[1] != "v1")
        reader.fail("expected header 'CSIMAP v1 theta th codebook_version'");
    MapParams params;
    params.theta = reader.parse_double(header[2], "theta");
    params.gc_threshold = reader.parse_double(header[3], "th");
    params.gc_period = gc_period;
    const auto version = reader.parse_count(header[4], "codebook_version");
    if (version > UINT32_MAX)
        reader.fail("codebook_version out of range");

    CsiMap map = [&] {
        try {
            return CsiMap(params, static_cast<std::uint32_t>(version));
        } catch (const ConfigError &e) {
            reader.fail(e.what());
        }
    }();

    auto parse_id = [&](const std::string &token, const char *field) {
        const auto v = reader.parse_count(token, field);
        if (v > UINT32_MAX)
            reader.fail(std::string(field) + " out of range");
        return static_cast<std::uint32_t>(v);
    };
    auto parse_index = [&](const std::string &token, const char *field) {
        const auto v = reader.parse_count(token, field);
        if (v > UINT16_MAX)
            reader.fail(std::string(field) + " out of range");
        return static_cast<std::uint16_t>(v);
    };

    std::vector<std::string> tok;
    while (reader.try_next(tok)) {
        const std::string &kind = tok[0];
        if (kind == "N") {
            if (tok.size() != 4)
                reader.fail("node line must be 'N id i n'");
            CsiNode node;
            node.id = parse_id(tok[1], "node id");
            node.qcsi = {parse_index(tok[2], "i"), parse_index(tok[3], "n")};
            if (map.nodes_.count(node.id))
                reader.fail("duplicate node id " + tok[1]);
            if (!map.index_.emplace(node.qcsi, node.id).second)
                reader.fail("duplicate QCSI on node " + tok[1]);
            map.next_id_ = std::max(map.next_id_, node.id + 1);
            map.nodes_.emplace(node.id, std::move(node));
        } else if (kind == "E") {
            if (tok.size() != 4)
                reader.fail("edge line must be 'E from to weight'");
            const NodeId from = parse_id(tok[1], "edge source");
            const NodeId to = parse_id(tok[2], "edge target");
            const double w = reader.parse_double(tok[3], "weight");
            if (!(w >= 0.0 && w <= 1.0))
                reader.fail("edge weight outside [0, 1]");
            const auto src = map.nodes_.find(from);
            if (src == map.nodes_.end() || !map.nodes_.count(to))
                reader.fail("edge references an unknown node");
            auto &node = src->second;
            if (std::find(node.targets.begin(), node.targets.end(), to) != node.targets.end())
                reader.fail("duplicate edge");
            node.targets.push_back(to);
            node.weights.push_back(w);
        } else if (kind == "C") {
            if (tok.size() != 3)
                reader.fail("cursor line must be 'C ut node'");
            const UtId ut = parse_id(tok[1], "ut");
            const NodeId id = parse_id(tok[2], "cursor node");
            if (!map.nodes_.count(id))
                reader.fail("cursor references an unknown node");
            if (!map.cursors_.emplace(ut, id).second)
                reader.fail("duplicate cursor for UT " + tok[1]);
        } else {
            reader.fail("unknown record '" + kind + "'");
        }
    }
    if (const auto problem = map.check_invariants(); !problem.empty())
        throw ParseError(source, reader.line(), "inconsistent map: " + problem);
    return map;
}

void CsiMap::save(const std::string &path) const
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write map file: " + path);
    write(out);
    if (!out)
        throw std::runtime_error("failed writing map file: " + path);
}

CsiMap CsiMap::load(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open map file: " + path);
    return read(in, path);
}

} // namespace csimap
