#include "osnsample/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "osnsample/errors.hpp"

namespace osnsample {

namespace {

// Undirected projection in compressed form; neighbor lists sorted, no duplicates.
struct Projection {
    std::vector<std::size_t> offsets;
    std::vector<NodeId> neighbors;

    explicit Projection(const DirectedGraph &graph) {
        const std::size_t n = graph.node_count();
        offsets.assign(n + 1, 0);
        neighbors.reserve(graph.edge_count() * 2);
        for (NodeId u = 0; u < n; ++u) {
            auto out = graph.out_neighbors(u);
            auto in = graph.in_neighbors(u);
            std::set_union(out.begin(), out.end(), in.begin(), in.end(),
                           std::back_inserter(neighbors));
            offsets[u + 1] = neighbors.size();
        }
    }

    std::size_t degree(NodeId u) const { return offsets[u + 1] - offsets[u]; }
    std::size_t node_count() const { return offsets.size() - 1; }
    const NodeId *begin(NodeId u) const { return neighbors.data() + offsets[u]; }
    const NodeId *end(NodeId u) const { return neighbors.data() + offsets[u + 1]; }
};

std::uint64_t count_triangles(const Projection &p) {
    const std::size_t n = p.node_count();
    auto before = [&](NodeId a, NodeId b) {
        const auto da = p.degree(a);
        const auto db = p.degree(b);
        return da != db ? da < db : a < b;
    };
    // Orient every edge toward the higher-ranked endpoint.
    std::vector<std::size_t> offsets(n + 1, 0);
    std::vector<NodeId> forward;
    forward.reserve(p.neighbors.size() / 2);
    for (NodeId u = 0; u < n; ++u) {
        for (const NodeId *it = p.begin(u); it != p.end(u); ++it) {
            if (before(u, *it)) {
                forward.push_back(*it);
            }
        }
        offsets[u + 1] = forward.size();
    }

    constexpr NodeId kUnmarked = static_cast<NodeId>(-1);
    std::vector<NodeId> mark(n, kUnmarked);
    std::uint64_t triangles = 0;
    for (NodeId u = 0; u < n; ++u) {
        for (std::size_t i = offsets[u]; i < offsets[u + 1]; ++i) {
            mark[forward[i]] = u;
        }
        for (std::size_t i = offsets[u]; i < offsets[u + 1]; ++i) {
            const NodeId v = forward[i];
            for (std::size_t j = offsets[v]; j < offsets[v + 1]; ++j) {
                if (mark[forward[j]] == u) {
                    ++triangles;
                }
            }
        }
    }
    return triangles;
}

std::optional<double> transitivity(const Projection &p) {
    std::uint64_t triples = 0;
    for (NodeId u = 0; u < p.node_count(); ++u) {
        const std::uint64_t d = p.degree(u);
        if (d >= 2) {
            triples += d * (d - 1) / 2;
        }
    }
    if (triples == 0) {
        return std::nullopt;
    }
    return 3.0 * static_cast<double>(count_triangles(p)) / static_cast<double>(triples);
}

std::optional<double> degree_assortativity(const Projection &p) {
    // Over undirected edges {j, k}: r = (4M*P - S1^2) / (2M*S2 - S1^2) with
    // S1 = sum(j + k), S2 = sum(j^2 + k^2), P = sum(j * k). Exact in 128 bits.
    __int128 m = 0;
    __int128 s1 = 0;
    __int128 s2 = 0;
    __int128 prod = 0;
    for (NodeId u = 0; u < p.node_count(); ++u) {
        const __int128 du = static_cast<__int128>(p.degree(u));
        for (const NodeId *it = p.begin(u); it != p.end(u); ++it) {
            if (*it < u) {
                continue;
            }
            const __int128 dv = static_cast<__int128>(p.degree(*it));
            ++m;
            s1 += du + dv;
            s2 += du * du + dv * dv;
            prod += du * dv;
        }
    }
    const __int128 denominator = 2 * m * s2 - s1 * s1;
    if (m == 0 || denominator == 0) {
        return std::nullopt;
    }
    const __int128 numerator = 4 * m * prod - s1 * s1;
    return static_cast<double>(static_cast<long double>(numerator) /
                               static_cast<long double>(denominator));
}

std::size_t component_count(const Projection &p) {
    std::vector<NodeId> parent(p.node_count());
    std::iota(parent.begin(), parent.end(), NodeId{0});
    auto find = [&](NodeId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::size_t components = p.node_count();
    for (NodeId u = 0; u < p.node_count(); ++u) {
        for (const NodeId *it = p.begin(u); it != p.end(u); ++it) {
            const NodeId a = find(u);
            const NodeId b = find(*it);
            if (a != b) {
                parent[std::max(a, b)] = std::min(a, b);
                --components;
            }
        }
    }
    return components;
}

std::optional<double> relative(double sampled, double truth) {
    if (truth == 0.0) {
        return std::nullopt;
    }
    return std::abs(sampled - truth) / std::abs(truth);
}

std::optional<double> relative(const std::optional<double> &sampled,
                               const std::optional<double> &truth) {
    if (!sampled || !truth) {
        return std::nullopt;
    }
    return relative(*sampled, *truth);
}

std::optional<double> mean_of(std::initializer_list<std::optional<double>> values) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto &v : values) {
        if (v) {
            sum += *v;
            ++count;
        }
    }
    if (count == 0) {
        return std::nullopt;
    }
    return sum / static_cast<double>(count);
}

} // namespace

PropertyReport compute_properties(const DirectedGraph &graph) {
    if (graph.empty()) {
        throw ParameterError("cannot compute properties of an empty graph");
    }
    const Projection projection(graph);
    PropertyReport report;
    report.vertices = graph.node_count();
    report.edges = graph.edge_count();
    report.mean_degree =
        2.0 * static_cast<double>(report.edges) / static_cast<double>(report.vertices);
    report.clustering_coefficient = transitivity(projection);
    report.assortativity = degree_assortativity(projection);
    report.components = component_count(projection);
    return report;
}

std::size_t weak_component_count(const DirectedGraph &graph) {
    return component_count(Projection(graph));
}

ErrorReport relative_error(const PropertyReport &sampled, const PropertyReport &truth) {
    ErrorReport report;
    report.mean_degree = relative(sampled.mean_degree, truth.mean_degree);
    report.clustering = relative(sampled.clustering_coefficient, truth.clustering_coefficient);
    report.assortativity = relative(sampled.assortativity, truth.assortativity);
    report.edges =
        relative(static_cast<double>(sampled.edges), static_cast<double>(truth.edges));
    report.aggregate_3 = mean_of({report.mean_degree, report.clustering, report.assortativity});
    report.aggregate_ed =
        mean_of({report.mean_degree, report.clustering, report.assortativity, report.edges});
    return report;
}

} // namespace osnsample
