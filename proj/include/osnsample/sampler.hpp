#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osnsample/api_sim.hpp"
#include "osnsample/graph.hpp"

namespace osnsample {

/// Which graph is built from the sampled pool.
enum class SamplerVariant {
    /// Induced subgraph on the pool.
    RNS,
    /// Pool plus every edge incident to a pool node and that edge's far endpoint.
    RNSE,
};

/**
 * Degree-concentration gate: a candidate set passes when its top
 * `top_percent` nodes by degree hold at least `share_percent` of the set's
 * degree sum. Named share-top, e.g. 80-20 is {20, 80}.
 */
struct Distribution {
    unsigned top_percent = 20;
    unsigned share_percent = 80;

    friend bool operator==(const Distribution &, const Distribution &) = default;
};

inline constexpr Distribution k85_15{15, 85};
inline constexpr Distribution k80_20{20, 80};
inline constexpr Distribution k75_25{25, 75};

struct SamplerConfig {
    SamplerVariant variant = SamplerVariant::RNS;
    /// nullopt samples uniformly; otherwise sets are gated by the distribution.
    std::optional<Distribution> distribution;
    double target_fraction = 0.1;
    /// Candidate set size as a fraction of the target pool size.
    double set_fraction = 0.02;
    /// Consecutive rejections allowed before the selective loop gives up.
    std::size_t max_tries = 10;
    std::uint64_t rng_seed = 0;
};

/// One candidate set drawn by the selective loop.
struct SetAttempt {
    std::vector<NodeId> nodes;
    bool accepted = false;
    /// Nodes actually added to the pool; fewer than `nodes` only for the final, truncated set.
    std::size_t admitted = 0;
};

struct SampleResult {
    /// Sampled nodes (ids of the test graph), in the order they were admitted.
    std::vector<NodeId> pool;
    /// Sample graph; labels are those of the test graph.
    DirectedGraph graph;
    std::size_t vertices_used = 0;
    RequestLedger ledger;
    /// Degree requests spent on candidates of rejected sets.
    std::uint64_t rejected_candidate_requests = 0;
    double wall_time_seconds = 0.0;
    bool early_terminated = false;
    std::vector<SetAttempt> tries_history;
};

/// Stable name such as "rns", "rnse", "rns-80-20", "rnse-85-15".
std::string variant_name(SamplerVariant variant, const std::optional<Distribution> &distribution);
std::string distribution_name(const Distribution &distribution);

/// Parses a variant name as produced by variant_name. Throws ParameterError.
std::pair<SamplerVariant, std::optional<Distribution>> parse_variant_name(std::string_view name);

/**
 * True iff the ceil(top_percent/100 * n) largest values hold at least
 * share_percent/100 of the total. A zero total never passes. Exact integer
 * comparison. Throws ParameterError on an empty list or an invalid pair.
 */
bool pareto_check(std::span<const std::uint64_t> degrees, const Distribution &distribution);

/// max(1, round(set_fraction * target_pool_size)).
std::size_t candidate_set_size(double set_fraction, std::size_t target_pool_size);

/// round(target_fraction * node_count).
std::size_t target_pool_size(double target_fraction, std::size_t node_count);

/**
 * Uniform sample without replacement of min(set_size, |eligible|) nodes,
 * in draw order. Empty when `eligible` is empty.
 */
std::vector<NodeId> draw_candidate_set(std::mt19937_64 &rng, std::span<const NodeId> eligible,
                                       std::size_t set_size);

/**
 * Selective sampling. Draws candidate sets from the not-yet-pooled nodes,
 * queries each candidate's degree through `api` and admits the whole set
 * when it passes pareto_check on total (in + out) degree; the tries counter
 * then resets. Each rejection costs one try; at zero the loop stops with
 * `early_terminated`. The last admitted set is cut down to the exact target
 * by dropping its highest ids. The graph is then finalized per variant.
 *
 * `api` must simulate `tg`.
 */
SampleResult selective_sample(ApiSimulator &api, const DirectedGraph &tg,
                              const SamplerConfig &config);

/// Uniform node sampling of exactly the target pool size, one degree request
/// per pooled node, finalized per variant.
SampleResult rns_sample(ApiSimulator &api, const DirectedGraph &tg, const SamplerConfig &config);

/**
 * Replaces the graph of `base` with the pool plus every incident edge and
 * its off-pool endpoint, fetching in- and out-neighbor lists through `api`.
 * Edges between two off-pool nodes are never added.
 */
SampleResult extend_with_neighbors(ApiSimulator &api, const DirectedGraph &tg,
                                   SampleResult base);

/// Dispatches to selective_sample or rns_sample on `config.distribution`.
SampleResult sample(ApiSimulator &api, const DirectedGraph &tg, const SamplerConfig &config);

} // namespace osnsample
