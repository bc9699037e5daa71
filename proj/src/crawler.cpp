#include "osnsample/crawler.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "osnsample/edge_list.hpp"

namespace osnsample {

TestGraph bfs_crawl(ApiSimulator &api, const CrawlSpec &spec) {
    if (spec.seeds.empty()) {
        throw ParameterError("crawl needs at least one seed");
    }
    if (spec.min_fully_analyzed == 0) {
        throw ParameterError("min_fully_analyzed must be positive");
    }
    std::unordered_map<NodeId, std::uint32_t> level;
    std::deque<NodeId> fifo;
    for (NodeId s : spec.seeds) {
        if (!api.contains(s)) {
            throw ParameterError("seed " + std::to_string(s) + " not in ground truth");
        }
        if (!level.emplace(s, 0).second) {
            throw ParameterError("duplicate seed " + std::to_string(s));
        }
        fifo.push_back(s);
    }

    std::vector<NodeId> analyzed_order;
    std::unordered_set<NodeId> analyzed;
    std::vector<Edge> edges;
    bool exhausted = false;

    auto discover = [&](NodeId v, std::uint32_t depth) {
        if (level.emplace(v, depth).second) {
            fifo.push_back(v);
        }
    };

    while (!fifo.empty() && analyzed_order.size() < spec.min_fully_analyzed) {
        const NodeId u = fifo.front();
        const std::uint32_t depth = level.at(u);
        if (spec.max_depth && depth > *spec.max_depth) {
            break;
        }
        std::vector<NodeId> in;
        std::vector<NodeId> out;
        try {
            api.query_degree(u);
            in = api.fetch_neighbors(u, Direction::In);
            out = api.fetch_neighbors(u, Direction::Out);
        } catch (const BudgetError &) {
            exhausted = true;
            break;
        }
        fifo.pop_front();
        analyzed.insert(u);
        analyzed_order.push_back(u);
        // An edge to an already analyzed node was recorded from the other side.
        for (NodeId v : out) {
            if (!analyzed.contains(v)) {
                edges.emplace_back(u, v);
            }
            discover(v, depth + 1);
        }
        for (NodeId v : in) {
            if (!analyzed.contains(v)) {
                edges.emplace_back(v, u);
            }
            discover(v, depth + 1);
        }
    }

    std::vector<NodeId> truth_ids;
    truth_ids.reserve(level.size());
    for (const auto &[node, _] : level) {
        truth_ids.push_back(node);
    }
    std::sort(truth_ids.begin(), truth_ids.end());
    std::unordered_map<NodeId, NodeId> local;
    local.reserve(truth_ids.size());
    std::vector<Label> labels(truth_ids.size());
    for (NodeId i = 0; i < truth_ids.size(); ++i) {
        local.emplace(truth_ids[i], i);
        labels[i] = api.label(truth_ids[i]);
    }
    for (auto &[u, v] : edges) {
        u = local.at(u);
        v = local.at(v);
    }

    TestGraph tg;
    tg.graph = DirectedGraph(std::move(labels), edges);
    tg.levels.resize(truth_ids.size());
    for (NodeId i = 0; i < truth_ids.size(); ++i) {
        tg.levels[i] = level.at(truth_ids[i]);
    }
    for (NodeId s : spec.seeds) {
        tg.seeds.push_back(local.at(s));
    }
    for (NodeId u : analyzed_order) {
        tg.fully_analyzed.push_back(local.at(u));
    }
    for (NodeId i = 0; i < truth_ids.size(); ++i) {
        if (!analyzed.contains(truth_ids[i])) {
            tg.frontier.push_back(i);
        }
    }
    tg.requests_spent = api.ledger_snapshot();
    tg.budget_exhausted = exhausted;
    return tg;
}

TestGraph whole_graph_test_graph(DirectedGraph graph) {
    TestGraph tg;
    tg.fully_analyzed.resize(graph.node_count());
    std::iota(tg.fully_analyzed.begin(), tg.fully_analyzed.end(), NodeId{0});
    tg.levels.assign(graph.node_count(), 0);
    tg.requests_spent.hourly_limit.reset();
    tg.graph = std::move(graph);
    return tg;
}

std::vector<NodeId> top_in_degree_nodes(const DirectedGraph &graph, std::size_t count) {
    std::vector<NodeId> ids(graph.node_count());
    std::iota(ids.begin(), ids.end(), NodeId{0});
    count = std::min(count, ids.size());
    std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(count), ids.end(),
                      [&](NodeId a, NodeId b) {
                          auto da = graph.in_degree(a);
                          auto db = graph.in_degree(b);
                          return da != db ? da > db : a < b;
                      });
    ids.resize(count);
    return ids;
}

namespace {

template <typename Range, typename Fn>
std::string join(const Range &range, Fn &&fn) {
    std::ostringstream out;
    bool first = true;
    for (const auto &item : range) {
        if (!first) {
            out << ' ';
        }
        first = false;
        out << fn(item);
    }
    return out.str();
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> parts;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') {
            ++i;
        }
        std::size_t j = s.find(' ', i);
        if (j == std::string_view::npos) {
            j = s.size();
        }
        if (j > i) {
            parts.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return parts;
}

template <typename T>
T parse_number(std::string_view s) {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("bad number '" + std::string(s) + "' in test graph metadata", 0);
    }
    return value;
}

std::filesystem::path meta_path(const std::filesystem::path &path) {
    auto meta = path;
    meta += ".meta";
    return meta;
}

} // namespace

void save_test_graph(const TestGraph &tg, const std::filesystem::path &path) {
    const auto &g = tg.graph;
    auto to_label = [&](NodeId u) { return g.label(u); };
    Metadata meta;
    meta.emplace_back("nodes", std::to_string(g.node_count()));
    meta.emplace_back("edges", std::to_string(g.edge_count()));
    meta.emplace_back("seeds", join(tg.seeds, to_label));
    meta.emplace_back("fully_analyzed", join(tg.fully_analyzed, to_label));
    std::vector<NodeId> all(g.node_count());
    std::iota(all.begin(), all.end(), NodeId{0});
    meta.emplace_back("levels", join(all, [&](NodeId u) {
                          return std::to_string(g.label(u)) + ":" + std::to_string(tg.levels.at(u));
                      }));
    const auto &ledger = tg.requests_spent;
    meta.emplace_back("requests_total", std::to_string(ledger.total_requests));
    meta.emplace_back("requests_degree", std::to_string(ledger.degree_requests));
    meta.emplace_back("requests_pages", std::to_string(ledger.neighbor_page_requests));
    meta.emplace_back("hourly_limit",
                      ledger.hourly_limit ? std::to_string(*ledger.hourly_limit) : "none");
    meta.emplace_back("simulated_clock_hours", std::to_string(ledger.simulated_clock_hours));
    meta.emplace_back("budget_exhausted", tg.budget_exhausted ? "true" : "false");

    save_edge_list(g, path);
    save_metadata(meta, meta_path(path));
}

TestGraph load_test_graph(const std::filesystem::path &path) {
    auto graph = load_edge_list(path);
    const auto meta_file = meta_path(path);
    if (!std::filesystem::exists(meta_file)) {
        return whole_graph_test_graph(std::move(graph));
    }
    const auto meta = load_metadata(meta_file);

    const auto &labels = graph.labels();
    auto id_of = [&](std::string_view token) -> std::optional<NodeId> {
        const auto label = parse_number<Label>(token);
        auto it = std::lower_bound(labels.begin(), labels.end(), label);
        if (it == labels.end() || *it != label) {
            return std::nullopt;
        }
        return static_cast<NodeId>(it - labels.begin());
    };
    auto id_list = [&](const char *key) {
        std::vector<NodeId> ids;
        if (const auto *value = find_value(meta, key)) {
            for (auto token : split_ws(*value)) {
                if (auto id = id_of(token)) {
                    ids.push_back(*id);
                }
            }
        }
        return ids;
    };

    TestGraph tg;
    tg.seeds = id_list("seeds");
    tg.fully_analyzed = id_list("fully_analyzed");
    tg.levels.assign(graph.node_count(), 0);
    if (const auto *value = find_value(meta, "levels")) {
        for (auto token : split_ws(*value)) {
            const auto colon = token.find(':');
            if (colon == std::string_view::npos) {
                throw ParseError("bad level entry '" + std::string(token) + "'", 0);
            }
            if (auto id = id_of(token.substr(0, colon))) {
                tg.levels[*id] = parse_number<std::uint32_t>(token.substr(colon + 1));
            }
        }
    }
    std::vector<bool> is_analyzed(graph.node_count(), false);
    for (NodeId u : tg.fully_analyzed) {
        is_analyzed[u] = true;
    }
    for (NodeId u = 0; u < graph.node_count(); ++u) {
        if (!is_analyzed[u]) {
            tg.frontier.push_back(u);
        }
    }
    auto number = [&](const char *key) -> std::uint64_t {
        const auto *value = find_value(meta, key);
        return value ? parse_number<std::uint64_t>(*value) : 0;
    };
    tg.requests_spent.total_requests = number("requests_total");
    tg.requests_spent.degree_requests = number("requests_degree");
    tg.requests_spent.neighbor_page_requests = number("requests_pages");
    if (const auto *limit = find_value(meta, "hourly_limit"); limit && *limit != "none") {
        tg.requests_spent.hourly_limit = parse_number<std::uint64_t>(*limit);
    } else {
        tg.requests_spent.hourly_limit.reset();
    }
    if (const auto *clock = find_value(meta, "simulated_clock_hours")) {
        tg.requests_spent.simulated_clock_hours = std::stod(*clock);
    }
    if (const auto *flag = find_value(meta, "budget_exhausted")) {
        tg.budget_exhausted = *flag == "true";
    }
    tg.graph = std::move(graph);
    return tg;
}

} // namespace osnsample
