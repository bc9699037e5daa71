#include "osnsample/api_sim.hpp"

#include <string>

namespace osnsample {

std::uint64_t neighbor_pages(std::uint64_t degree, std::size_t page_size) {
    return (degree + page_size - 1) / page_size;
}

ApiSimulator::ApiSimulator(const DirectedGraph &truth, ApiConfig config)
    : truth_(truth),
      config_(config),
      degree_known_(truth.node_count(), false),
      in_fetched_(truth.node_count(), false),
      out_fetched_(truth.node_count(), false) {
    if (config_.page_size == 0) {
        throw ParameterError("page_size must be positive");
    }
    if (config_.hourly_limit && *config_.hourly_limit == 0) {
        throw ParameterError("hourly_limit must be positive");
    }
}

void ApiSimulator::check_node(NodeId node) const {
    if (!contains(node)) {
        throw LookupError("unknown node " + std::to_string(node));
    }
}

RequestLedger ApiSimulator::snapshot_locked() const {
    RequestLedger ledger;
    ledger.degree_requests = degree_requests_;
    ledger.neighbor_page_requests = page_requests_;
    ledger.total_requests = degree_requests_ + page_requests_;
    ledger.hourly_limit = config_.hourly_limit;
    if (config_.hourly_limit && ledger.total_requests > 0) {
        ledger.simulated_clock_hours =
            static_cast<double>((ledger.total_requests - 1) / *config_.hourly_limit);
    }
    return ledger;
}

void ApiSimulator::charge(std::uint64_t degree_requests, std::uint64_t page_requests) {
    const std::uint64_t cost = degree_requests + page_requests;
    if (config_.request_budget &&
        degree_requests_ + page_requests_ + cost > *config_.request_budget) {
        throw BudgetError("request budget of " + std::to_string(*config_.request_budget) +
                              " exhausted",
                          snapshot_locked());
    }
    degree_requests_ += degree_requests;
    page_requests_ += page_requests;
}

DegreeInfo ApiSimulator::query_degree(NodeId node) {
    check_node(node);
    std::lock_guard lock(mutex_);
    if (!degree_known_[node]) {
        charge(1, 0);
        degree_known_[node] = true;
    }
    return {node, truth_.in_degree(node), truth_.out_degree(node)};
}

std::vector<NodeId> ApiSimulator::fetch_neighbors(NodeId node, Direction direction) {
    check_node(node);
    std::lock_guard lock(mutex_);
    const bool in = direction == Direction::In;
    auto &fetched = in ? in_fetched_ : out_fetched_;
    auto list = in ? truth_.in_neighbors(node) : truth_.out_neighbors(node);
    if (!fetched[node]) {
        charge(0, neighbor_pages(list.size(), config_.page_size));
        fetched[node] = true;
    }
    return {list.begin(), list.end()};
}

Label ApiSimulator::label(NodeId node) const {
    check_node(node);
    return truth_.label(node);
}

RequestLedger ApiSimulator::ledger_snapshot() const {
    std::lock_guard lock(mutex_);
    return snapshot_locked();
}

} // namespace osnsample
