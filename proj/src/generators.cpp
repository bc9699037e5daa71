#include "osnsample/generators.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "osnsample/errors.hpp"

namespace osnsample {

std::string_view to_string(GraphModel model) {
    switch (model) {
    case GraphModel::PreferentialAttachment:
        return "preferential-attachment";
    case GraphModel::UniformRandom:
        return "uniform-random";
    case GraphModel::Regular:
        return "regular";
    }
    return "unknown";
}

GraphModel parse_graph_model(std::string_view name) {
    if (name == "preferential-attachment" || name == "pa") {
        return GraphModel::PreferentialAttachment;
    }
    if (name == "uniform-random" || name == "uniform") {
        return GraphModel::UniformRandom;
    }
    if (name == "regular") {
        return GraphModel::Regular;
    }
    throw ParameterError("unknown graph model '" + std::string(name) + "'");
}

namespace {

DirectedGraph mixed_attachment(const GeneratorSpec &spec, std::vector<Edge> edges,
                               std::vector<NodeId> in_list, std::mt19937_64 &rng) {
    const std::size_t n = spec.node_target;
    const std::size_t m = spec.edges_per_node;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<NodeId> out_list;
    out_list.reserve(edges.capacity());
    std::unordered_set<std::uint64_t> present;
    auto key = [](NodeId u, NodeId v) { return (std::uint64_t{u} << 32) | v; };
    for (const auto &[u, v] : edges) {
        out_list.push_back(u);
        present.insert(key(u, v));
    }

    for (std::size_t t = m + 1; t < n; ++t) {
        const double offset_mass = spec.attachment_offset * static_cast<double>(t);
        std::uniform_int_distribution<NodeId> pick_node(0, static_cast<NodeId>(t - 1));
        auto pick = [&](const std::vector<NodeId> &list) {
            const double by_degree = static_cast<double>(list.size());
            if (unit(rng) * (by_degree + offset_mass) < by_degree) {
                return list[std::uniform_int_distribution<std::size_t>(0, list.size() - 1)(rng)];
            }
            return pick_node(rng);
        };
        // The first edge always leaves the new node so that no node is isolated.
        std::size_t added = 0;
        while (added < m) {
            const bool between_existing = added > 0 && unit(rng) < spec.source_preference;
            const NodeId source = between_existing ? pick(out_list) : static_cast<NodeId>(t);
            const NodeId target = pick(in_list);
            if (source == target || !present.insert(key(source, target)).second) {
                continue;
            }
            edges.emplace_back(source, target);
            out_list.push_back(source);
            in_list.push_back(target);
            ++added;
        }
    }
    return DirectedGraph(n, edges);
}

DirectedGraph preferential_attachment(const GeneratorSpec &spec) {
    const std::size_t n = spec.node_target;
    const std::size_t m = spec.edges_per_node;
    if (m == 0 || m >= n) {
        throw ParameterError("edges_per_node must be in [1, node_target)");
    }
    if (!(spec.attachment_offset > 0.0)) {
        throw ParameterError("attachment_offset must be positive");
    }
    if (!(spec.source_preference >= 0.0 && spec.source_preference <= 1.0)) {
        throw ParameterError("source_preference must be in [0, 1]");
    }

    std::mt19937_64 rng(spec.rng_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<Edge> edges;
    edges.reserve(m * (n - m));
    // Targets of every edge so far; a uniform pick from this list is a pick
    // proportional to in-degree.
    std::vector<NodeId> in_list;
    in_list.reserve(m * (n - m));

    for (NodeId v = 0; v < m; ++v) {
        edges.emplace_back(static_cast<NodeId>(m), v);
        in_list.push_back(v);
    }

    if (spec.source_preference > 0.0) {
        return mixed_attachment(spec, std::move(edges), std::move(in_list), rng);
    }

    std::unordered_set<NodeId> chosen;
    for (std::size_t t = m + 1; t < n; ++t) {
        chosen.clear();
        const double by_degree = static_cast<double>(in_list.size());
        const double total = by_degree + spec.attachment_offset * static_cast<double>(t);
        std::uniform_int_distribution<std::size_t> pick_edge(0, in_list.size() - 1);
        std::uniform_int_distribution<NodeId> pick_node(0, static_cast<NodeId>(t - 1));
        while (chosen.size() < m) {
            const NodeId target =
                unit(rng) * total < by_degree ? in_list[pick_edge(rng)] : pick_node(rng);
            chosen.insert(target);
        }
        std::vector<NodeId> targets(chosen.begin(), chosen.end());
        std::sort(targets.begin(), targets.end());
        for (NodeId v : targets) {
            edges.emplace_back(static_cast<NodeId>(t), v);
            in_list.push_back(v);
        }
    }
    return DirectedGraph(n, edges);
}

DirectedGraph uniform_random(const GeneratorSpec &spec) {
    const double p = spec.edge_probability;
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ParameterError("edge_probability must be in [0, 1]");
    }
    const std::size_t n = spec.node_target;
    std::vector<Edge> edges;
    if (p == 0.0) {
        return DirectedGraph(n, edges);
    }
    std::mt19937_64 rng(spec.rng_seed);
    // Walk the n*(n-1) ordered pairs, skipping geometric gaps.
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1);
    std::geometric_distribution<std::uint64_t> gap(p);
    for (std::uint64_t i = p == 1.0 ? 0 : gap(rng); i < pairs;
         i += 1 + (p == 1.0 ? 0 : gap(rng))) {
        const auto u = static_cast<NodeId>(i / (n - 1));
        auto v = static_cast<NodeId>(i % (n - 1));
        if (v >= u) {
            ++v;
        }
        edges.emplace_back(u, v);
    }
    return DirectedGraph(n, edges);
}

DirectedGraph regular(const GeneratorSpec &spec) {
    const std::size_t n = spec.node_target;
    const std::size_t d = spec.uniform_degree;
    if (d == 0 || d >= n) {
        throw ParameterError("uniform_degree must be in [1, node_target)");
    }
    std::vector<Edge> edges;
    edges.reserve(n * d);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t k = 1; k <= d; ++k) {
            edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>((u + k) % n));
        }
    }
    return DirectedGraph(n, edges);
}

} // namespace

DirectedGraph generate(const GeneratorSpec &spec) {
    if (spec.node_target < 2) {
        throw ParameterError("node_target must be at least 2");
    }
    if (spec.node_target > std::numeric_limits<NodeId>::max() / 2) {
        throw ParameterError("node_target too large");
    }
    switch (spec.model) {
    case GraphModel::PreferentialAttachment:
        return preferential_attachment(spec);
    case GraphModel::UniformRandom:
        return uniform_random(spec);
    case GraphModel::Regular:
        return regular(spec);
    }
    throw ParameterError("unknown graph model");
}

} // namespace osnsample
