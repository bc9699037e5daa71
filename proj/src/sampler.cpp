#include "osnsample/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <unordered_set>

#include "osnsample/errors.hpp"

namespace osnsample {

std::string distribution_name(const Distribution &distribution) {
    return std::to_string(distribution.share_percent) + "-" +
           std::to_string(distribution.top_percent);
}

std::string variant_name(SamplerVariant variant, const std::optional<Distribution> &distribution) {
    std::string name = variant == SamplerVariant::RNS ? "rns" : "rnse";
    if (distribution) {
        name += "-" + distribution_name(*distribution);
    }
    return name;
}

std::pair<SamplerVariant, std::optional<Distribution>> parse_variant_name(std::string_view name) {
    const auto dash = name.find('-');
    const auto family = name.substr(0, dash);
    SamplerVariant variant;
    if (family == "rns") {
        variant = SamplerVariant::RNS;
    } else if (family == "rnse") {
        variant = SamplerVariant::RNSE;
    } else {
        throw ParameterError("unknown sampler variant '" + std::string(name) + "'");
    }
    if (dash == std::string_view::npos) {
        return {variant, std::nullopt};
    }
    const auto rest = name.substr(dash + 1);
    for (const auto &d : {k85_15, k80_20, k75_25}) {
        if (rest == distribution_name(d)) {
            return {variant, d};
        }
    }
    throw ParameterError("unknown distribution '" + std::string(rest) +
                         "' (expected 85-15, 80-20 or 75-25)");
}

namespace {

void validate(const Distribution &d) {
    if (d.top_percent == 0 || d.top_percent >= 100 || d.top_percent + d.share_percent != 100) {
        throw ParameterError("distribution must satisfy 0 < top < 100 and top + share == 100");
    }
}

void validate(const SamplerConfig &config) {
    if (!(config.target_fraction > 0.0 && config.target_fraction <= 1.0)) {
        throw ParameterError("target_fraction must be in (0, 1]");
    }
    if (!(config.set_fraction > 0.0)) {
        throw ParameterError("set_fraction must be positive");
    }
    if (config.max_tries == 0) {
        throw ParameterError("max_tries must be positive");
    }
    if (config.distribution) {
        validate(*config.distribution);
    }
}

std::size_t checked_target(const DirectedGraph &tg, const SamplerConfig &config) {
    validate(config);
    if (tg.empty()) {
        throw ParameterError("test graph is empty");
    }
    const auto target = target_pool_size(config.target_fraction, tg.node_count());
    if (target == 0) {
        throw ParameterError("target fraction rounds to an empty pool");
    }
    return target;
}

SampleResult finalize(ApiSimulator &api, const DirectedGraph &tg, const SamplerConfig &config,
                      SampleResult result) {
    if (config.variant == SamplerVariant::RNSE) {
        return extend_with_neighbors(api, tg, std::move(result));
    }
    result.graph = induced_subgraph(tg, result.pool);
    result.vertices_used = result.graph.node_count();
    result.ledger = api.ledger_snapshot();
    return result;
}

// Eligible nodes with O(1) removal.
class EligibleSet {
public:
    explicit EligibleSet(std::size_t n) : nodes_(n), position_(n) {
        std::iota(nodes_.begin(), nodes_.end(), NodeId{0});
        std::iota(position_.begin(), position_.end(), std::size_t{0});
    }

    std::span<const NodeId> nodes() const { return nodes_; }

    void remove(NodeId node) {
        const std::size_t at = position_[node];
        const NodeId last = nodes_.back();
        nodes_[at] = last;
        position_[last] = at;
        nodes_.pop_back();
    }

private:
    std::vector<NodeId> nodes_;
    std::vector<std::size_t> position_;
};

template <typename Fn>
SampleResult timed(Fn &&fn) {
    const auto start = std::chrono::steady_clock::now();
    SampleResult result = fn();
    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace

bool pareto_check(std::span<const std::uint64_t> degrees, const Distribution &distribution) {
    validate(distribution);
    if (degrees.empty()) {
        throw ParameterError("pareto_check needs a non-empty degree list");
    }
    std::vector<std::uint64_t> sorted(degrees.begin(), degrees.end());
    const std::size_t n = sorted.size();
    const std::size_t top = (distribution.top_percent * n + 99) / 100;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(top - 1),
                     sorted.end(), std::greater<>());
    const auto top_sum = std::accumulate(sorted.begin(),
                                         sorted.begin() + static_cast<std::ptrdiff_t>(top),
                                         std::uint64_t{0});
    const auto total = std::accumulate(sorted.begin(), sorted.end(), std::uint64_t{0});
    if (total == 0) {
        return false;
    }
    // top_sum / total >= share / 100
    return static_cast<unsigned __int128>(top_sum) * 100 >=
           static_cast<unsigned __int128>(total) * distribution.share_percent;
}

std::size_t candidate_set_size(double set_fraction, std::size_t target_pool_size) {
    const auto size = std::llround(set_fraction * static_cast<double>(target_pool_size));
    return static_cast<std::size_t>(std::max<long long>(1, size));
}

std::size_t target_pool_size(double target_fraction, std::size_t node_count) {
    return static_cast<std::size_t>(std::llround(target_fraction * static_cast<double>(node_count)));
}

std::vector<NodeId> draw_candidate_set(std::mt19937_64 &rng, std::span<const NodeId> eligible,
                                       std::size_t set_size) {
    const std::size_t n = eligible.size();
    if (set_size >= n) {
        return {eligible.begin(), eligible.end()};
    }
    // Floyd's algorithm over positions.
    std::vector<NodeId> drawn;
    drawn.reserve(set_size);
    std::unordered_set<std::size_t> taken;
    taken.reserve(set_size * 2);
    for (std::size_t j = n - set_size; j < n; ++j) {
        std::uniform_int_distribution<std::size_t> pick(0, j);
        std::size_t t = pick(rng);
        if (!taken.insert(t).second) {
            t = j;
            taken.insert(j);
        }
        drawn.push_back(eligible[t]);
    }
    return drawn;
}

namespace {

SampleResult selective_pool(ApiSimulator &api, const DirectedGraph &tg,
                            const SamplerConfig &config) {
    if (!config.distribution) {
        throw ParameterError("selective sampling needs a distribution");
    }
    const std::size_t target = checked_target(tg, config);
    const std::size_t set_size = candidate_set_size(config.set_fraction, target);

    std::mt19937_64 rng(config.rng_seed);
    EligibleSet eligible(tg.node_count());
    SampleResult result;
    result.pool.reserve(target);
    std::size_t tries = config.max_tries;
    std::vector<std::uint64_t> degrees;

    while (result.pool.size() < target) {
        auto candidates = draw_candidate_set(rng, eligible.nodes(), set_size);
        if (candidates.empty()) {
            break;
        }
        const auto before = api.ledger_snapshot().degree_requests;
        degrees.clear();
        for (NodeId v : candidates) {
            degrees.push_back(api.query_degree(v).total());
        }
        SetAttempt attempt;
        attempt.accepted = pareto_check(degrees, *config.distribution);
        if (attempt.accepted) {
            const std::size_t room = target - result.pool.size();
            std::vector<NodeId> admitted = candidates;
            if (admitted.size() > room) {
                std::sort(admitted.begin(), admitted.end());
                admitted.resize(room);
            }
            for (NodeId v : admitted) {
                eligible.remove(v);
                result.pool.push_back(v);
            }
            attempt.admitted = admitted.size();
            tries = config.max_tries;
        } else {
            result.rejected_candidate_requests += api.ledger_snapshot().degree_requests - before;
            --tries;
        }
        attempt.nodes = std::move(candidates);
        result.tries_history.push_back(std::move(attempt));
        if (tries == 0) {
            result.early_terminated = true;
            break;
        }
    }
    return finalize(api, tg, config, std::move(result));
}

SampleResult uniform_pool(ApiSimulator &api, const DirectedGraph &tg,
                          const SamplerConfig &config) {
    if (config.distribution) {
        throw ParameterError("uniform sampling takes no distribution");
    }
    const std::size_t target = checked_target(tg, config);
    std::vector<NodeId> all(tg.node_count());
    std::iota(all.begin(), all.end(), NodeId{0});
    std::mt19937_64 rng(config.rng_seed);

    SampleResult result;
    result.pool = draw_candidate_set(rng, all, target);
    for (NodeId v : result.pool) {
        api.query_degree(v);
    }
    return finalize(api, tg, config, std::move(result));
}

} // namespace

SampleResult selective_sample(ApiSimulator &api, const DirectedGraph &tg,
                              const SamplerConfig &config) {
    return timed([&] { return selective_pool(api, tg, config); });
}

SampleResult rns_sample(ApiSimulator &api, const DirectedGraph &tg, const SamplerConfig &config) {
    return timed([&] { return uniform_pool(api, tg, config); });
}

SampleResult extend_with_neighbors(ApiSimulator &api, const DirectedGraph &tg,
                                   SampleResult base) {
    std::vector<Edge> edges;
    for (NodeId u : base.pool) {
        for (NodeId v : api.fetch_neighbors(u, Direction::Out)) {
            edges.emplace_back(u, v);
        }
        for (NodeId v : api.fetch_neighbors(u, Direction::In)) {
            edges.emplace_back(v, u);
        }
    }
    // An edge between two pool nodes is seen from both ends.
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    base.graph = edge_subgraph(tg, base.pool, edges);
    base.vertices_used = base.graph.node_count();
    base.ledger = api.ledger_snapshot();
    return base;
}

SampleResult sample(ApiSimulator &api, const DirectedGraph &tg, const SamplerConfig &config) {
    return config.distribution ? selective_sample(api, tg, config) : rns_sample(api, tg, config);
}

} // namespace osnsample
