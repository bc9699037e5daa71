#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "osnsample/api_sim.hpp"
#include "osnsample/graph.hpp"

namespace osnsample {

struct CrawlSpec {
    /// Ground-truth node ids; distinct.
    std::vector<NodeId> seeds;
    std::size_t min_fully_analyzed = 25000;
    /// Deepest BFS level that is fully analyzed (seeds are level 0).
    std::optional<std::size_t> max_depth;
};

/**
 * Result of a breadth-first crawl.
 *
 * `graph` holds every discovered node and every edge incident to a fully
 * analyzed node. Frontier nodes keep only the edges through which they were
 * discovered. Node labels are the ground-truth labels; `fully_analyzed`,
 * `frontier` and `seeds` are ids into `graph`.
 */
struct TestGraph {
    DirectedGraph graph;
    std::vector<NodeId> seeds;
    /// In analysis order.
    std::vector<NodeId> fully_analyzed;
    std::vector<NodeId> frontier;
    /// BFS level per node of `graph`.
    std::vector<std::uint32_t> levels;
    RequestLedger requests_spent;
    bool budget_exhausted = false;
};

/**
 * Fully analyzes nodes in FIFO discovery order until `min_fully_analyzed`
 * is reached, the frontier runs dry, or the next node lies beyond
 * `max_depth`. A strict-budget exhaustion ends the crawl early with
 * `budget_exhausted` set; the node being analyzed at that point is left on
 * the frontier.
 */
TestGraph bfs_crawl(ApiSimulator &api, const CrawlSpec &spec);

/// Whole graph as a test graph: every node fully analyzed, zero requests.
TestGraph whole_graph_test_graph(DirectedGraph graph);

/// `count` highest in-degree nodes, ties broken by lower id.
std::vector<NodeId> top_in_degree_nodes(const DirectedGraph &graph, std::size_t count);

/// Writes `<path>` (edge list) and `<path>.meta` (seeds, levels, ledger).
void save_test_graph(const TestGraph &tg, const std::filesystem::path &path);

/// Reads a test graph written by save_test_graph. A bare edge list without a
/// `.meta` sidecar loads as a whole-graph test graph.
TestGraph load_test_graph(const std::filesystem::path &path);

} // namespace osnsample
