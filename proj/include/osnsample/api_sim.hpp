#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <vector>

#include "osnsample/errors.hpp"
#include "osnsample/graph.hpp"

namespace osnsample {

/**
 * Request counters for a simulated rate-limited API.
 *
 * When an hourly limit is set, every completed block of `hourly_limit`
 * requests that is followed by at least one more request costs one hour of
 * waiting: clock = floor((total - 1) / limit).
 */
struct RequestLedger {
    std::uint64_t total_requests = 0;
    std::uint64_t degree_requests = 0;
    std::uint64_t neighbor_page_requests = 0;
    std::optional<std::uint64_t> hourly_limit = 350;
    double simulated_clock_hours = 0.0;

    friend bool operator==(const RequestLedger &, const RequestLedger &) = default;
};

struct DegreeInfo {
    NodeId node = 0;
    std::uint64_t in_degree = 0;
    std::uint64_t out_degree = 0;

    std::uint64_t total() const { return in_degree + out_degree; }
    friend bool operator==(const DegreeInfo &, const DegreeInfo &) = default;
};

enum class Direction { In, Out };

/// Thrown in strict mode when a call would exceed the request budget.
class BudgetError : public Error {
public:
    BudgetError(const std::string &what, RequestLedger spent) : Error(what), spent_(spent) {}
    const RequestLedger &spent() const noexcept { return spent_; }

private:
    RequestLedger spent_;
};

struct ApiConfig {
    std::size_t page_size = 5000;
    /// Virtual clock only; nothing ever sleeps. nullopt disables the clock.
    std::optional<std::uint64_t> hourly_limit = 350;
    /// Strict mode: total request cap. nullopt is accounting mode (unlimited).
    std::optional<std::uint64_t> request_budget;
};

/**
 * Simulated OSN API over a ground-truth graph.
 *
 * A degree lookup costs one request; a neighbor list costs
 * ceil(degree / page_size) requests (none for an empty list). Every answer is
 * cached after its first charge and served free afterwards. All calls are
 * serialized, so a simulator may be shared between threads.
 *
 * The simulator keeps a reference to `truth`, which must outlive it.
 */
class ApiSimulator {
public:
    explicit ApiSimulator(const DirectedGraph &truth, ApiConfig config = {});

    ApiSimulator(const ApiSimulator &) = delete;
    ApiSimulator &operator=(const ApiSimulator &) = delete;

    DegreeInfo query_degree(NodeId node);
    std::vector<NodeId> fetch_neighbors(NodeId node, Direction direction);

    /// Label of `node` in the ground truth. Identity information only; free.
    Label label(NodeId node) const;
    bool contains(NodeId node) const noexcept { return node < truth_.node_count(); }

    RequestLedger ledger_snapshot() const;
    const ApiConfig &config() const noexcept { return config_; }

private:
    void check_node(NodeId node) const;
    void charge(std::uint64_t degree_requests, std::uint64_t page_requests);
    RequestLedger snapshot_locked() const;

    const DirectedGraph &truth_;
    ApiConfig config_;

    mutable std::mutex mutex_;
    std::uint64_t degree_requests_ = 0;
    std::uint64_t page_requests_ = 0;
    std::vector<bool> degree_known_;
    std::vector<bool> in_fetched_;
    std::vector<bool> out_fetched_;
};

/// ceil(degree / page_size), with 0 for an empty list.
std::uint64_t neighbor_pages(std::uint64_t degree, std::size_t page_size);

} // namespace osnsample
