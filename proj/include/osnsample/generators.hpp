#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "osnsample/graph.hpp"

namespace osnsample {

enum class GraphModel {
    PreferentialAttachment,
    UniformRandom,
    Regular,
};

std::string_view to_string(GraphModel model);
GraphModel parse_graph_model(std::string_view name);

/**
 * Parameters for the synthetic graph generators.
 *
 * - PreferentialAttachment: directed growth model. Each new node follows
 *   `edges_per_node` distinct existing nodes, picked with probability
 *   proportional to (in-degree + attachment_offset). In-degree is heavy-tailed.
 *   With source_preference > 0 some edges join two existing nodes, which
 *   makes out-degree heavy-tailed as well.
 * - UniformRandom: every ordered pair (u, v), u != v, is an edge with
 *   probability `edge_probability`.
 * - Regular: circulant graph, node i follows i+1 .. i+uniform_degree (mod n);
 *   every node has in- and out-degree `uniform_degree`.
 */
struct GeneratorSpec {
    GraphModel model = GraphModel::PreferentialAttachment;
    std::size_t node_target = 0;
    std::size_t edges_per_node = 5;
    double attachment_offset = 1.0;
    /// Preferential attachment: chance that each of a new node's edges after
    /// the first joins two existing nodes instead, the source picked in
    /// proportion to (out-degree + attachment_offset). 0 is the plain model.
    double source_preference = 0.0;
    double edge_probability = 0.0;
    std::size_t uniform_degree = 2;
    std::uint64_t rng_seed = 0;
};

/// Throws ParameterError on an invalid combination. Deterministic in the seed.
DirectedGraph generate(const GeneratorSpec &spec);

} // namespace osnsample
