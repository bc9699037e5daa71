#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace osnsample {

using NodeId = std::uint32_t;
using Label = std::int64_t;
using Edge = std::pair<NodeId, NodeId>;

/**
 * Immutable simple directed graph in compressed adjacency form.
 *
 * Nodes are dense ids 0..node_count()-1. Each node also carries a label,
 * the id it had in whatever graph or file it came from; labels are what
 * save_edge_list writes and what subgraph operations preserve.
 *
 * Out- and in-adjacency lists are sorted ascending. Self-loops and parallel
 * edges are rejected at construction.
 */
class DirectedGraph {
public:
    DirectedGraph() = default;

    /// Builds a graph on `node_count` nodes labelled 0..node_count-1.
    DirectedGraph(std::size_t node_count, std::span<const Edge> edges);

    /// Builds a graph with explicit labels (one per node, all distinct).
    DirectedGraph(std::vector<Label> labels, std::span<const Edge> edges);

    std::size_t node_count() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return out_targets_.size(); }
    bool empty() const noexcept { return labels_.empty(); }

    std::span<const NodeId> out_neighbors(NodeId u) const {
        return {out_targets_.data() + out_offsets_[u], out_targets_.data() + out_offsets_[u + 1]};
    }
    std::span<const NodeId> in_neighbors(NodeId u) const {
        return {in_sources_.data() + in_offsets_[u], in_sources_.data() + in_offsets_[u + 1]};
    }

    std::size_t out_degree(NodeId u) const { return out_offsets_[u + 1] - out_offsets_[u]; }
    std::size_t in_degree(NodeId u) const { return in_offsets_[u + 1] - in_offsets_[u]; }
    std::size_t total_degree(NodeId u) const { return out_degree(u) + in_degree(u); }

    bool has_edge(NodeId u, NodeId v) const;

    Label label(NodeId u) const { return labels_[u]; }
    const std::vector<Label> &labels() const noexcept { return labels_; }

    /// All edges in (source, target) order.
    std::vector<Edge> edges() const;

    /// All edges expressed in labels, sorted.
    std::vector<std::pair<Label, Label>> labelled_edges() const;

    friend bool operator==(const DirectedGraph &, const DirectedGraph &) = default;

private:
    void build(std::span<const Edge> edges);

    std::vector<Label> labels_;
    std::vector<std::size_t> out_offsets_{0};
    std::vector<NodeId> out_targets_;
    std::vector<std::size_t> in_offsets_{0};
    std::vector<NodeId> in_sources_;
};

/**
 * Subgraph on `nodes` holding every edge of `graph` with both endpoints in
 * the set. Result nodes are ordered by ascending parent id and keep the
 * parent's labels. Duplicate ids in `nodes` are ignored.
 */
DirectedGraph induced_subgraph(const DirectedGraph &graph, std::span<const NodeId> nodes);

/// Subgraph holding `edges` (parent ids, each must exist in `graph`) on `nodes`
/// plus every edge endpoint, ordered by ascending parent id.
DirectedGraph edge_subgraph(const DirectedGraph &graph, std::span<const NodeId> nodes,
                            std::span<const Edge> edges);

} // namespace osnsample
