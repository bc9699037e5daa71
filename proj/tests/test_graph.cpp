#include <doctest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "osnsample/edge_list.hpp"
#include "osnsample/errors.hpp"
#include "osnsample/generators.hpp"
#include "osnsample/graph.hpp"

using namespace osnsample;

namespace {

DirectedGraph cycle3() {
    std::vector<Edge> e{{0, 1}, {1, 2}, {2, 0}};
    return DirectedGraph(3, e);
}

void check_bookkeeping(const DirectedGraph &g) {
    std::size_t out = 0, in = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        out += g.out_degree(u);
        in += g.in_degree(u);
        for (NodeId v : g.out_neighbors(u)) {
            const auto ins = g.in_neighbors(v);
            CHECK(std::count(ins.begin(), ins.end(), u) == 1);
        }
    }
    CHECK(out == g.edge_count());
    CHECK(in == g.edge_count());
}

} // namespace

TEST_CASE("graph construction keeps sorted adjacency and counts") {
    std::vector<Edge> e{{2, 0}, {0, 2}, {0, 1}};
    DirectedGraph g(3, e);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 3);
    auto out0 = g.out_neighbors(0);
    REQUIRE(out0.size() == 2);
    CHECK(out0[0] == 1);
    CHECK(out0[1] == 2);
    CHECK(g.has_edge(2, 0));
    CHECK_FALSE(g.has_edge(1, 0));
    check_bookkeeping(g);
}

TEST_CASE("self-loops, duplicates and out-of-range ids are rejected") {
    std::vector<Edge> loop{{0, 0}};
    CHECK_THROWS_AS(DirectedGraph(2, loop), ValidationError);
    std::vector<Edge> dup{{0, 1}, {0, 1}};
    CHECK_THROWS_AS(DirectedGraph(2, dup), ValidationError);
    std::vector<Edge> range{{0, 5}};
    CHECK_THROWS_AS(DirectedGraph(2, range), ParameterError);
    std::vector<Edge> none;
    CHECK_THROWS_AS(DirectedGraph(std::vector<Label>{4, 4}, none), ValidationError);
}

TEST_CASE("induced subgraph") {
    const auto g = cycle3();
    std::vector<NodeId> two{0, 1};
    const auto sub = induced_subgraph(g, two);
    CHECK(sub.node_count() == 2);
    REQUIRE(sub.edge_count() == 1);
    CHECK(sub.labelled_edges().front() == std::pair<Label, Label>{0, 1});

    std::vector<NodeId> all{2, 0, 1, 1};
    CHECK(induced_subgraph(g, all) == g);

    std::vector<NodeId> bad{7};
    CHECK_THROWS_AS(induced_subgraph(g, bad), ParameterError);
}

TEST_CASE("induced subgraph of the regular example matches a full scan") {
    const auto g = generate({.model = GraphModel::Regular, .node_target = 10, .uniform_degree = 2, .rng_seed = 1});
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<NodeId> all(10);
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<NodeId> five(all.begin(), all.begin() + 5);
        const auto sub = induced_subgraph(g, five);
        CHECK(sub.edge_count() == oracle::induced_edge_count(g, five));
        check_bookkeeping(sub);
    }
}

TEST_CASE("induced subgraph is monotone in the node set") {
    std::mt19937_64 rng(9);
    const auto g = oracle::random_graph(rng, 30, 0.1);
    std::vector<NodeId> a{1, 4, 7, 9};
    std::vector<NodeId> b{1, 4, 7, 9, 12, 20, 25};
    const auto ea = induced_subgraph(g, a).labelled_edges();
    const auto eb = induced_subgraph(g, b).labelled_edges();
    CHECK(std::includes(eb.begin(), eb.end(), ea.begin(), ea.end()));
}

TEST_CASE("edge list parsing") {
    std::istringstream cycle("0 1\n1 2\n2 0\n");
    const auto g = read_edge_list(cycle);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 3);

    std::istringstream loop("0 0\n");
    CHECK_THROWS_AS(read_edge_list(loop), ValidationError);

    std::istringstream bad("0 1\n\n1 x\n");
    try {
        read_edge_list(bad);
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.line() == 3);
    }

    std::istringstream sparse("100 7\r\n7\t-3\n");
    const auto s = read_edge_list(sparse);
    CHECK(s.labels() == std::vector<Label>{-3, 7, 100});
    CHECK(s.has_edge(2, 1));
}

TEST_CASE("edge list round trip of a generated graph") {
    const auto g = generate({.node_target = 10000, .edges_per_node = 5, .rng_seed = 3});
    std::stringstream buffer;
    write_edge_list(g, buffer);
    const auto back = read_edge_list(buffer);
    CHECK(back.node_count() == g.node_count());
    CHECK(back.edge_count() == g.edge_count());
    CHECK(back == g);
}

TEST_CASE("loading a missing file is an I/O error") {
    CHECK_THROWS_AS(load_edge_list("/nonexistent/dir/graph.txt"), IoError);
}
