#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osnsample/api_sim.hpp"
#include "osnsample/config.hpp"
#include "osnsample/crawler.hpp"
#include "osnsample/edge_list.hpp"
#include "osnsample/generators.hpp"
#include "osnsample/metrics.hpp"
#include "osnsample/sampler.hpp"

namespace osnsample {

struct CrawlSettings {
    /// Seeds are the `seed_count` highest in-degree nodes of the ground truth.
    std::size_t seed_count = 3;
    std::size_t min_fully_analyzed = 25000;
    std::optional<std::size_t> max_depth;
};

/// Where a test graph comes from: an edge-list file or a generator, optionally
/// followed by a breadth-first crawl of that graph.
struct TgSource {
    std::string name;
    std::optional<std::filesystem::path> path;
    std::optional<GeneratorSpec> generator;
    std::optional<CrawlSettings> crawl;
};

struct VariantSpec {
    SamplerVariant variant = SamplerVariant::RNS;
    std::optional<Distribution> distribution;

    std::string name() const { return variant_name(variant, distribution); }
    friend bool operator==(const VariantSpec &, const VariantSpec &) = default;
};

/// RNS, RNSE, then each of 85-15, 80-20, 75-25 for RNS and RNSE.
std::vector<VariantSpec> all_variants();

/// 0.1, 0.2, ..., 0.9.
std::vector<double> default_fractions();

struct ExperimentMatrix {
    std::vector<TgSource> tgs;
    std::vector<VariantSpec> variants = all_variants();
    std::vector<double> sample_fractions = default_fractions();
    std::size_t iterations = 10;
    std::uint64_t base_seed = 0;
    ApiConfig api;
    double set_fraction = 0.02;
    std::size_t max_tries = 10;
    /// 0 uses the hardware concurrency.
    std::size_t workers = 0;
    std::filesystem::path out_dir = "report";

    std::size_t run_count() const {
        return tgs.size() * variants.size() * sample_fractions.size() * iterations;
    }
};

/**
 * Reads a matrix from a config document. Sections:
 *
 *   [matrix]  variants, fractions, iterations, base_seed, workers, out_dir
 *   [api]     page_size, hourly_limit (0 disables), request_budget
 *   [sampler] set_fraction, max_tries
 *   [tg]      (repeatable) name, and either path or model/nodes/edges_per_node/
 *             attachment_offset/source_preference/edge_probability/degree/seed, plus optional
 *             crawl_seeds, crawl_min_fully_analyzed, crawl_max_depth
 */
ExperimentMatrix matrix_from_config(const ConfigDocument &doc);

/// Fully resolved matrix settings, defaults included, as key-value records.
Metadata describe(const ExperimentMatrix &matrix);

/// Per-run seed from the run coordinates. RNS and RNSE runs of the same
/// distribution, fraction and iteration share a seed and hence a pool.
std::uint64_t derive_run_seed(std::uint64_t base_seed, std::size_t tg_index,
                              const std::optional<Distribution> &distribution, double fraction,
                              std::size_t iteration);

enum class RunStatus {
    Ok,
    /// The sampler stopped with an empty pool; nothing to evaluate.
    EmptySample,
    Failed,
};

std::string_view to_string(RunStatus status);

struct RunRecord {
    std::size_t tg_index = 0;
    std::size_t variant_index = 0;
    std::size_t fraction_index = 0;
    std::size_t iteration = 0;
    std::uint64_t seed = 0;
    RunStatus status = RunStatus::Ok;
    std::string message;
    bool early_terminated = false;
    std::size_t pool_size = 0;
    std::size_t vertices_used = 0;
    std::size_t sample_edges = 0;
    RequestLedger ledger;
    std::uint64_t rejected_candidate_requests = 0;
    std::optional<PropertyReport> properties;
    ErrorReport errors;
    /// Sampling plus property computation.
    double wall_time_seconds = 0.0;
};

/// Per (variant, fraction) aggregate over every test graph and iteration.
struct CellSummary {
    std::size_t variant_index = 0;
    std::size_t fraction_index = 0;
    std::size_t runs = 0;
    std::size_t evaluated_runs = 0;
    std::size_t early_terminated_runs = 0;
    std::size_t failed_runs = 0;
    /// NaN when no run produced the value.
    double mean_err_3 = 0.0;
    double mean_err_ed = 0.0;
    /// Sample variance (n - 1) of the per-run aggregate_3 error.
    double variance_err_3 = 0.0;
    double mean_vertices_used = 0.0;
    double mean_requests = 0.0;
    double mean_wall_time_seconds = 0.0;
};

struct TgSummary {
    std::string name;
    PropertyReport truth;
    std::size_t fully_analyzed = 0;
    RequestLedger crawl_requests;
};

/// Wall time and error relative to the smallest fraction of the same variant.
struct TimePoint {
    std::size_t variant_index = 0;
    std::size_t fraction_index = 0;
    double mean_wall_time_seconds = 0.0;
    double time_variation_pct = 0.0;
    double mean_err_3 = 0.0;
    double result_improvement_pct = 0.0;
};

struct AggregateReport {
    std::vector<TgSummary> tgs;
    std::vector<VariantSpec> variants;
    std::vector<double> fractions;
    std::size_t iterations = 0;
    Metadata settings;
    /// Variant-major, then fraction.
    std::vector<CellSummary> cells;
    std::vector<RunRecord> runs;

    const CellSummary &cell(std::size_t variant_index, std::size_t fraction_index) const {
        return cells.at(variant_index * fractions.size() + fraction_index);
    }
    std::size_t failure_count() const;
    std::vector<TimePoint> time_series() const;
};

/// Loads, generates and crawls the matrix's test graphs.
std::vector<TestGraph> prepare_test_graphs(const ExperimentMatrix &matrix);

/// Runs every cell. Run failures are recorded, never thrown; the report is
/// independent of the worker count except for wall-time fields.
AggregateReport run_matrix(const ExperimentMatrix &matrix);
AggregateReport run_matrix(const ExperimentMatrix &matrix, std::span<const TestGraph> tgs);

/// Recomputes the cell summaries from `report.runs`.
std::vector<CellSummary> aggregate_runs(const AggregateReport &report);

/**
 * Writes errors.csv, conservation.csv, timeseries.csv, runs.csv and
 * metadata.txt into `out_dir`. Throws ParameterError for a report without
 * runs and IoError when the directory cannot be written; in both cases
 * before any file is touched.
 */
void emit_reports(const AggregateReport &report, const std::filesystem::path &out_dir);

} // namespace osnsample
