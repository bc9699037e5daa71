#pragma once

#include <optional>

#include "osnsample/graph.hpp"

namespace osnsample {

/**
 * The evaluated graph properties.
 *
 * Mean degree is total degree, 2E/N. Clustering is global transitivity
 * (3 x triangles / connected triples) and assortativity is the Pearson
 * correlation of endpoint degrees; both are taken on the undirected
 * projection (reciprocal edges collapse to one). Either is nullopt when
 * undefined: no connected triples, or zero degree variance across edge
 * endpoints. Components are weakly connected components.
 */
struct PropertyReport {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    double mean_degree = 0.0;
    std::optional<double> clustering_coefficient;
    std::optional<double> assortativity;
    std::size_t components = 0;

    friend bool operator==(const PropertyReport &, const PropertyReport &) = default;
};

/// Throws ParameterError on an empty graph.
PropertyReport compute_properties(const DirectedGraph &graph);

/**
 * Per-property relative errors |sampled - truth| / |truth|.
 *
 * A property is incomparable (nullopt) when the truth value is exactly 0 or
 * either side is undefined; incomparable properties are left out of the
 * aggregates. aggregate_3 averages mean degree, clustering and
 * assortativity; aggregate_ed also includes the edge count.
 */
struct ErrorReport {
    std::optional<double> mean_degree;
    std::optional<double> clustering;
    std::optional<double> assortativity;
    std::optional<double> edges;
    std::optional<double> aggregate_3;
    std::optional<double> aggregate_ed;

    bool all_comparable() const {
        return mean_degree && clustering && assortativity && edges;
    }
    friend bool operator==(const ErrorReport &, const ErrorReport &) = default;
};

ErrorReport relative_error(const PropertyReport &sampled, const PropertyReport &truth);

std::size_t weak_component_count(const DirectedGraph &graph);

} // namespace osnsample
