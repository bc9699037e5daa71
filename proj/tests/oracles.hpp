#pragma once

// Brute-force reference implementations shared by the unit and acceptance
// tests. Deliberately naive: nothing here reuses library internals.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "osnsample/graph.hpp"
#include "osnsample/metrics.hpp"

namespace oracle {

using osnsample::DirectedGraph;
using osnsample::Edge;
using osnsample::NodeId;

struct Properties {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    double mean_degree = 0.0;
    std::optional<double> clustering;
    std::optional<double> assortativity;
    std::size_t components = 0;
};

inline std::vector<std::vector<bool>> undirected_matrix(const DirectedGraph &g) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const auto &[u, v] : g.edges()) {
        adj[u][v] = adj[v][u] = true;
    }
    return adj;
}

/// Exhaustive triples, definitional Pearson correlation, explicit search.
inline Properties properties(const DirectedGraph &g) {
    Properties p;
    const std::size_t n = g.node_count();
    p.vertices = n;
    p.edges = g.edge_count();
    p.mean_degree = 2.0 * static_cast<double>(p.edges) / static_cast<double>(n);
    const auto adj = undirected_matrix(g);

    std::vector<long> deg(n, 0);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            deg[u] += adj[u][v];
        }
    }

    // Closed and connected triples over every unordered node triple.
    long closed = 0;
    long connected = 0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            for (std::size_t c = b + 1; c < n; ++c) {
                const int links = adj[a][b] + adj[b][c] + adj[a][c];
                if (links == 3) {
                    closed += 3;
                    connected += 3;
                } else if (links == 2) {
                    connected += 1;
                }
            }
        }
    }
    if (connected > 0) {
        p.clustering = static_cast<double>(closed) / static_cast<double>(connected);
    }

    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (adj[u][v]) {
                xs.push_back(static_cast<double>(deg[u]));
                ys.push_back(static_cast<double>(deg[v]));
            }
        }
    }
    if (!xs.empty()) {
        const double m = static_cast<double>(xs.size());
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= m;
        my /= m;
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
            syy += (ys[i] - my) * (ys[i] - my);
        }
        if (sxx > 1e-12 && syy > 1e-12) {
            p.assortativity = sxy / std::sqrt(sxx * syy);
        }
    }

    std::vector<bool> seen(n, false);
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) {
            continue;
        }
        ++p.components;
        std::vector<std::size_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            const auto u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v) {
                if (adj[u][v] && !seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
            }
        }
    }
    return p;
}

/// Sort-and-sum in floating point with the threshold taken literally.
inline bool pareto(std::vector<std::uint64_t> degrees, unsigned top_percent, unsigned share_percent) {
    std::sort(degrees.begin(), degrees.end(), std::greater<>());
    const long double total = [&] {
        long double s = 0;
        for (auto d : degrees) {
            s += d;
        }
        return s;
    }();
    if (total == 0) {
        return false;
    }
    // Smallest k with k >= top_percent * n / 100, done in integers.
    std::size_t k = 0;
    while (k * 100 < top_percent * degrees.size()) {
        ++k;
    }
    long double top = 0;
    for (std::size_t i = 0; i < k; ++i) {
        top += degrees[i];
    }
    return top * 100 >= static_cast<long double>(share_percent) * total;
}

/// Request charge for a fully analyzed node.
inline std::uint64_t full_analysis_cost(std::uint64_t in, std::uint64_t out, std::uint64_t page) {
    return 1 + (in + page - 1) / page + (out + page - 1) / page;
}

/// Edge set {(u,v) in g : u in pool or v in pool}, as label pairs.
inline std::set<std::pair<std::int64_t, std::int64_t>> incident_edges(
    const DirectedGraph &g, const std::vector<NodeId> &pool) {
    std::set<NodeId> in_pool(pool.begin(), pool.end());
    std::set<std::pair<std::int64_t, std::int64_t>> result;
    for (const auto &[u, v] : g.edges()) {
        if (in_pool.count(u) || in_pool.count(v)) {
            result.emplace(g.label(u), g.label(v));
        }
    }
    return result;
}

/// Edges with both endpoints in `nodes`, by full scan.
inline std::size_t induced_edge_count(const DirectedGraph &g, const std::vector<NodeId> &nodes) {
    std::set<NodeId> s(nodes.begin(), nodes.end());
    std::size_t count = 0;
    for (const auto &[u, v] : g.edges()) {
        count += s.count(u) && s.count(v);
    }
    return count;
}

inline bool close(const std::optional<double> &a, const std::optional<double> &b, double tol) {
    if (a.has_value() != b.has_value()) {
        return false;
    }
    return !a || std::fabs(*a - *b) <= tol;
}

inline bool matches(const osnsample::PropertyReport &r, const Properties &p, double tol) {
    return r.vertices == p.vertices && r.edges == p.edges &&
           std::fabs(r.mean_degree - p.mean_degree) <= tol &&
           close(r.clustering_coefficient, p.clustering, tol) &&
           close(r.assortativity, p.assortativity, tol) && r.components == p.components;
}

/// Random simple directed graph on n nodes, each ordered pair with probability p.
template <class Rng>
DirectedGraph random_graph(Rng &rng, std::size_t n, double p) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = 0; v < n; ++v) {
            if (u != v && unit(rng) < p) {
                edges.emplace_back(u, v);
            }
        }
    }
    return DirectedGraph(n, edges);
}

} // namespace oracle
