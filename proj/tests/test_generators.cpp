#include <doctest.h>

#include <algorithm>
#include <functional>

#include "osnsample/errors.hpp"
#include "osnsample/generators.hpp"

using namespace osnsample;

namespace {

/// Top-20% total-degree sum and total, by sorting.
std::pair<std::uint64_t, std::uint64_t> top20(const DirectedGraph &g) {
    std::vector<std::uint64_t> deg;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        deg.push_back(g.total_degree(u));
    }
    std::sort(deg.begin(), deg.end(), std::greater<>());
    std::uint64_t top = 0, total = 0;
    for (std::size_t i = 0; i < deg.size(); ++i) {
        total += deg[i];
        if (i < deg.size() / 5) {
            top += deg[i];
        }
    }
    return {top, total};
}

} // namespace

TEST_CASE("regular generator") {
    const auto g = generate({.model = GraphModel::Regular, .node_target = 10, .uniform_degree = 2,
                             .rng_seed = 1});
    CHECK(g.edge_count() == 20);
    for (NodeId u = 0; u < 10; ++u) {
        CHECK(g.in_degree(u) == 2);
        CHECK(g.out_degree(u) == 2);
    }
    CHECK_THROWS_AS(generate({.model = GraphModel::Regular, .node_target = 1, .uniform_degree = 2}),
                    ParameterError);
    CHECK_THROWS_AS(generate({.model = GraphModel::Regular, .node_target = 3, .uniform_degree = 3}),
                    ParameterError);
}

TEST_CASE("preferential attachment fixture") {
    const GeneratorSpec spec{.node_target = 10000, .edges_per_node = 5, .rng_seed = 7};
    const auto g = generate(spec);
    CHECK(g.node_count() == 10000);
    CHECK(g.edge_count() == 5 * (10000 - 5));
    // Measured once and frozen: top 2,000 nodes hold 56416 of 99950 degree.
    const auto [top, total] = top20(g);
    CHECK(top == 56416);
    CHECK(total == 99950);
    CHECK(static_cast<double>(top) / static_cast<double>(total) > 0.5);
    CHECK(generate(spec) == g);

    auto other = spec;
    other.rng_seed = 8;
    CHECK_FALSE(generate(other) == g);
}

TEST_CASE("preferential attachment share holds for m >= 3") {
    for (std::size_t m : {3, 4, 8}) {
        const auto g = generate({.node_target = 10000, .edges_per_node = m, .rng_seed = 21});
        const auto [top, total] = top20(g);
        CHECK(2 * top > total);
    }
}

TEST_CASE("mixed attachment keeps edge count and raises concentration") {
    const GeneratorSpec plain{.node_target = 20000, .edges_per_node = 10,
                              .attachment_offset = 0.3, .rng_seed = 4};
    auto mixed = plain;
    mixed.source_preference = 1.0;
    const auto a = generate(plain);
    const auto b = generate(mixed);
    CHECK(b.edge_count() == a.edge_count());
    CHECK(generate(mixed) == b);
    for (NodeId u = 10; u < b.node_count(); ++u) {
        REQUIRE(b.total_degree(u) >= 1);
    }
    const auto [ta, sa] = top20(a);
    const auto [tb, sb] = top20(b);
    CHECK(static_cast<double>(tb) / sb > static_cast<double>(ta) / sa + 0.1);

    mixed.source_preference = 1.5;
    CHECK_THROWS_AS(generate(mixed), ParameterError);
}

TEST_CASE("uniform random generator") {
    const auto g = generate({.model = GraphModel::UniformRandom, .node_target = 300,
                             .edge_probability = 0.05, .rng_seed = 2});
    const double expected = 0.05 * 300 * 299;
    CHECK(std::abs(static_cast<double>(g.edge_count()) - expected) < 0.1 * expected);
    const auto full = generate({.model = GraphModel::UniformRandom, .node_target = 5,
                                .edge_probability = 1.0});
    CHECK(full.edge_count() == 20);
    CHECK_THROWS_AS(generate({.model = GraphModel::UniformRandom, .node_target = 5,
                              .edge_probability = 1.5}),
                    ParameterError);
}

TEST_CASE("model names") {
    CHECK(parse_graph_model("pa") == GraphModel::PreferentialAttachment);
    CHECK(parse_graph_model(to_string(GraphModel::Regular)) == GraphModel::Regular);
    CHECK_THROWS_AS(parse_graph_model("lattice"), ParameterError);
}
