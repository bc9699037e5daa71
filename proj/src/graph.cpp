#include "osnsample/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "osnsample/errors.hpp"

namespace osnsample {

DirectedGraph::DirectedGraph(std::size_t node_count, std::span<const Edge> edges)
    : labels_(node_count) {
    std::iota(labels_.begin(), labels_.end(), Label{0});
    build(edges);
}

DirectedGraph::DirectedGraph(std::vector<Label> labels, std::span<const Edge> edges)
    : labels_(std::move(labels)) {
    auto sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("duplicate node label");
    }
    build(edges);
}

void DirectedGraph::build(std::span<const Edge> edges) {
    const std::size_t n = labels_.size();
    std::vector<Edge> sorted(edges.begin(), edges.end());
    for (const auto &[u, v] : sorted) {
        if (u >= n || v >= n) {
            throw ParameterError("edge endpoint out of range: " + std::to_string(u) + " -> " +
                                 std::to_string(v));
        }
        if (u == v) {
            throw ValidationError("self-loop at node " + std::to_string(labels_[u]));
        }
    }
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
        throw ValidationError("duplicate edge " + std::to_string(labels_[dup->first]) + " -> " +
                              std::to_string(labels_[dup->second]));
    }

    out_offsets_.assign(n + 1, 0);
    in_offsets_.assign(n + 1, 0);
    for (const auto &[u, v] : sorted) {
        ++out_offsets_[u + 1];
        ++in_offsets_[v + 1];
    }
    std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
    std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());

    out_targets_.resize(sorted.size());
    in_sources_.resize(sorted.size());
    std::vector<std::size_t> in_cursor(in_offsets_.begin(), in_offsets_.end() - 1);
    // sorted by (u, v): out lists fill in order, and each in list receives
    // sources in ascending order as u increases.
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto [u, v] = sorted[i];
        out_targets_[i] = v;
        in_sources_[in_cursor[v]++] = u;
    }
}

bool DirectedGraph::has_edge(NodeId u, NodeId v) const {
    auto out = out_neighbors(u);
    return std::binary_search(out.begin(), out.end(), v);
}

std::vector<Edge> DirectedGraph::edges() const {
    std::vector<Edge> result;
    result.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u) {
        for (NodeId v : out_neighbors(u)) {
            result.emplace_back(u, v);
        }
    }
    return result;
}

std::vector<std::pair<Label, Label>> DirectedGraph::labelled_edges() const {
    std::vector<std::pair<Label, Label>> result;
    result.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u) {
        for (NodeId v : out_neighbors(u)) {
            result.emplace_back(labels_[u], labels_[v]);
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

namespace {

constexpr NodeId kAbsent = static_cast<NodeId>(-1);

// Maps parent ids to dense positions in ascending parent order.
struct Relabel {
    std::vector<NodeId> parent_ids;
    std::vector<NodeId> position;

    Relabel(std::size_t parent_size, std::vector<NodeId> ids) : position(parent_size, kAbsent) {
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        if (!ids.empty() && ids.back() >= parent_size) {
            throw ParameterError("node id " + std::to_string(ids.back()) + " out of range");
        }
        parent_ids = std::move(ids);
        for (NodeId i = 0; i < parent_ids.size(); ++i) {
            position[parent_ids[i]] = i;
        }
    }

    std::vector<Label> labels(const DirectedGraph &parent) const {
        std::vector<Label> result(parent_ids.size());
        for (std::size_t i = 0; i < parent_ids.size(); ++i) {
            result[i] = parent.label(parent_ids[i]);
        }
        return result;
    }
};

} // namespace

DirectedGraph induced_subgraph(const DirectedGraph &graph, std::span<const NodeId> nodes) {
    Relabel relabel(graph.node_count(), {nodes.begin(), nodes.end()});
    std::vector<Edge> edges;
    for (NodeId u : relabel.parent_ids) {
        for (NodeId v : graph.out_neighbors(u)) {
            if (relabel.position[v] != kAbsent) {
                edges.emplace_back(relabel.position[u], relabel.position[v]);
            }
        }
    }
    return DirectedGraph(relabel.labels(graph), edges);
}

DirectedGraph edge_subgraph(const DirectedGraph &graph, std::span<const NodeId> nodes,
                            std::span<const Edge> edges) {
    std::vector<NodeId> endpoints(nodes.begin(), nodes.end());
    endpoints.reserve(nodes.size() + edges.size() * 2);
    for (const auto &[u, v] : edges) {
        endpoints.push_back(u);
        endpoints.push_back(v);
    }
    Relabel relabel(graph.node_count(), std::move(endpoints));
    std::vector<Edge> mapped;
    mapped.reserve(edges.size());
    for (const auto &[u, v] : edges) {
        if (u >= graph.node_count() || v >= graph.node_count() || !graph.has_edge(u, v)) {
            throw ParameterError("edge not present in parent graph");
        }
        mapped.emplace_back(relabel.position[u], relabel.position[v]);
    }
    return DirectedGraph(relabel.labels(graph), mapped);
}

} // namespace osnsample
