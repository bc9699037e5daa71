#include "osnsample/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include <fmt/format.h>

namespace osnsample {

std::vector<VariantSpec> all_variants() {
    using enum SamplerVariant;
    return {
        {RNS, std::nullopt},  {RNSE, std::nullopt}, {RNS, k85_15}, {RNSE, k85_15},
        {RNS, k80_20},        {RNSE, k80_20},       {RNS, k75_25}, {RNSE, k75_25},
    };
}

std::vector<double> default_fractions() {
    return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

std::string_view to_string(RunStatus status) {
    switch (status) {
    case RunStatus::Ok:
        return "ok";
    case RunStatus::EmptySample:
        return "empty-sample";
    case RunStatus::Failed:
        return "failed";
    }
    return "unknown";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string fmt_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    return fmt::format("{}", value);
}

std::string fmt_optional(const std::optional<double> &value) {
    return value ? fmt_double(*value) : std::string{};
}

std::optional<std::size_t> optional_size(const ConfigDocument::Section &section,
                                         std::string_view key) {
    if (const auto *value = section.find(key)) {
        return parse_uint(*value, key);
    }
    return std::nullopt;
}

TgSource tg_from_section(const ConfigDocument::Section &section, std::size_t index) {
    TgSource source;
    const auto *name = section.find("name");
    source.name = name ? *name : "tg" + std::to_string(index);
    if (const auto *path = section.find("path")) {
        source.path = *path;
    }
    if (const auto *model = section.find("model")) {
        GeneratorSpec spec;
        spec.model = parse_graph_model(*model);
        if (const auto *v = section.find("nodes")) {
            spec.node_target = parse_uint(*v, "nodes");
        }
        if (const auto *v = section.find("edges_per_node")) {
            spec.edges_per_node = parse_uint(*v, "edges_per_node");
        }
        if (const auto *v = section.find("attachment_offset")) {
            spec.attachment_offset = parse_double(*v, "attachment_offset");
        }
        if (const auto *v = section.find("source_preference")) {
            spec.source_preference = parse_double(*v, "source_preference");
        }
        if (const auto *v = section.find("edge_probability")) {
            spec.edge_probability = parse_double(*v, "edge_probability");
        }
        if (const auto *v = section.find("degree")) {
            spec.uniform_degree = parse_uint(*v, "degree");
        }
        if (const auto *v = section.find("seed")) {
            spec.rng_seed = parse_uint(*v, "seed");
        }
        source.generator = spec;
    }
    if (source.path.has_value() == source.generator.has_value()) {
        throw ParameterError("[tg] section '" + source.name +
                             "' needs exactly one of 'path' or 'model'");
    }
    const auto seeds = optional_size(section, "crawl_seeds");
    const auto min_fa = optional_size(section, "crawl_min_fully_analyzed");
    const auto depth = optional_size(section, "crawl_max_depth");
    if (seeds || min_fa || depth) {
        CrawlSettings crawl;
        crawl.seed_count = seeds.value_or(crawl.seed_count);
        crawl.min_fully_analyzed = min_fa.value_or(crawl.min_fully_analyzed);
        crawl.max_depth = depth;
        source.crawl = crawl;
    }
    return source;
}

} // namespace

ExperimentMatrix matrix_from_config(const ConfigDocument &doc) {
    ExperimentMatrix matrix;
    if (const auto *v = doc.find("matrix", "variants")) {
        matrix.variants.clear();
        for (const auto &name : split_list(*v)) {
            if (name == "all") {
                auto all = all_variants();
                matrix.variants.insert(matrix.variants.end(), all.begin(), all.end());
                continue;
            }
            auto [variant, distribution] = parse_variant_name(name);
            matrix.variants.push_back({variant, distribution});
        }
    }
    if (const auto *v = doc.find("matrix", "fractions")) {
        matrix.sample_fractions.clear();
        for (const auto &item : split_list(*v)) {
            matrix.sample_fractions.push_back(parse_double(item, "fractions"));
        }
    }
    if (const auto *v = doc.find("matrix", "iterations")) {
        matrix.iterations = parse_uint(*v, "iterations");
    }
    if (const auto *v = doc.find("matrix", "base_seed")) {
        matrix.base_seed = parse_uint(*v, "base_seed");
    }
    if (const auto *v = doc.find("matrix", "workers")) {
        matrix.workers = parse_uint(*v, "workers");
    }
    if (const auto *v = doc.find("matrix", "out_dir")) {
        matrix.out_dir = *v;
    }
    if (const auto *v = doc.find("api", "page_size")) {
        matrix.api.page_size = parse_uint(*v, "page_size");
    }
    if (const auto *v = doc.find("api", "hourly_limit")) {
        const auto limit = parse_uint(*v, "hourly_limit");
        matrix.api.hourly_limit =
            limit == 0 ? std::nullopt : std::optional<std::uint64_t>(limit);
    }
    if (const auto *v = doc.find("api", "request_budget")) {
        const auto budget = parse_uint(*v, "request_budget");
        matrix.api.request_budget =
            budget == 0 ? std::nullopt : std::optional<std::uint64_t>(budget);
    }
    if (const auto *v = doc.find("sampler", "set_fraction")) {
        matrix.set_fraction = parse_double(*v, "set_fraction");
    }
    if (const auto *v = doc.find("sampler", "max_tries")) {
        matrix.max_tries = parse_uint(*v, "max_tries");
    }
    for (const auto &section : doc.sections()) {
        if (section.name == "tg") {
            matrix.tgs.push_back(tg_from_section(section, matrix.tgs.size()));
        }
    }
    return matrix;
}

Metadata describe(const ExperimentMatrix &matrix) {
    Metadata meta;
    std::vector<std::string> names;
    for (const auto &v : matrix.variants) {
        names.push_back(v.name());
    }
    std::vector<std::string> fractions;
    for (double f : matrix.sample_fractions) {
        fractions.push_back(fmt_double(f));
    }
    meta.emplace_back("matrix.variants", fmt::format("{}", fmt::join(names, ",")));
    meta.emplace_back("matrix.fractions", fmt::format("{}", fmt::join(fractions, ",")));
    meta.emplace_back("matrix.iterations", std::to_string(matrix.iterations));
    meta.emplace_back("matrix.base_seed", std::to_string(matrix.base_seed));
    meta.emplace_back("matrix.workers", std::to_string(matrix.workers));
    meta.emplace_back("matrix.out_dir", matrix.out_dir.string());
    meta.emplace_back("matrix.runs", std::to_string(matrix.run_count()));
    meta.emplace_back("api.page_size", std::to_string(matrix.api.page_size));
    meta.emplace_back("api.hourly_limit",
                      matrix.api.hourly_limit ? std::to_string(*matrix.api.hourly_limit) : "0");
    meta.emplace_back("api.request_budget", matrix.api.request_budget
                                                ? std::to_string(*matrix.api.request_budget)
                                                : "none");
    meta.emplace_back("sampler.set_fraction", fmt_double(matrix.set_fraction));
    meta.emplace_back("sampler.max_tries", std::to_string(matrix.max_tries));
    for (std::size_t i = 0; i < matrix.tgs.size(); ++i) {
        const auto &tg = matrix.tgs[i];
        const auto prefix = "tg." + std::to_string(i) + ".";
        meta.emplace_back(prefix + "name", tg.name);
        if (tg.path) {
            meta.emplace_back(prefix + "path", tg.path->string());
        }
        if (tg.generator) {
            const auto &g = *tg.generator;
            meta.emplace_back(prefix + "model", std::string(to_string(g.model)));
            meta.emplace_back(prefix + "nodes", std::to_string(g.node_target));
            meta.emplace_back(prefix + "edges_per_node", std::to_string(g.edges_per_node));
            meta.emplace_back(prefix + "attachment_offset", fmt_double(g.attachment_offset));
            meta.emplace_back(prefix + "source_preference", fmt_double(g.source_preference));
            meta.emplace_back(prefix + "edge_probability", fmt_double(g.edge_probability));
            meta.emplace_back(prefix + "degree", std::to_string(g.uniform_degree));
            meta.emplace_back(prefix + "seed", std::to_string(g.rng_seed));
        }
        if (tg.crawl) {
            meta.emplace_back(prefix + "crawl_seeds", std::to_string(tg.crawl->seed_count));
            meta.emplace_back(prefix + "crawl_min_fully_analyzed",
                              std::to_string(tg.crawl->min_fully_analyzed));
            meta.emplace_back(prefix + "crawl_max_depth",
                              tg.crawl->max_depth ? std::to_string(*tg.crawl->max_depth)
                                                  : "none");
        }
    }
    return meta;
}

std::uint64_t derive_run_seed(std::uint64_t base_seed, std::size_t tg_index,
                              const std::optional<Distribution> &distribution, double fraction,
                              std::size_t iteration) {
    const std::uint64_t dist_code =
        distribution ? distribution->top_percent * 1000ULL + distribution->share_percent : 0;
    std::uint64_t h = splitmix64(base_seed);
    h = splitmix64(h ^ tg_index);
    h = splitmix64(h ^ dist_code);
    h = splitmix64(h ^ static_cast<std::uint64_t>(std::llround(fraction * 1e6)));
    h = splitmix64(h ^ iteration);
    return h;
}

std::vector<TestGraph> prepare_test_graphs(const ExperimentMatrix &matrix) {
    std::vector<TestGraph> tgs;
    for (const auto &source : matrix.tgs) {
        DirectedGraph base = source.path ? load_edge_list(*source.path) : generate(*source.generator);
        if (!source.crawl) {
            tgs.push_back(whole_graph_test_graph(std::move(base)));
            continue;
        }
        ApiSimulator api(base, matrix.api);
        CrawlSpec spec;
        spec.seeds = top_in_degree_nodes(base, source.crawl->seed_count);
        spec.min_fully_analyzed = source.crawl->min_fully_analyzed;
        spec.max_depth = source.crawl->max_depth;
        tgs.push_back(bfs_crawl(api, spec));
    }
    return tgs;
}

namespace {

RunRecord execute_run(const ExperimentMatrix &matrix, const TestGraph &tg,
                      const PropertyReport &truth, RunRecord record) {
    const auto &variant = matrix.variants[record.variant_index];
    SamplerConfig config;
    config.variant = variant.variant;
    config.distribution = variant.distribution;
    config.target_fraction = matrix.sample_fractions[record.fraction_index];
    config.set_fraction = matrix.set_fraction;
    config.max_tries = matrix.max_tries;
    config.rng_seed = record.seed;
    try {
        ApiSimulator api(tg.graph, matrix.api);
        const auto start = std::chrono::steady_clock::now();
        auto result = sample(api, tg.graph, config);
        record.early_terminated = result.early_terminated;
        record.pool_size = result.pool.size();
        record.vertices_used = result.vertices_used;
        record.sample_edges = result.graph.edge_count();
        record.ledger = result.ledger;
        record.rejected_candidate_requests = result.rejected_candidate_requests;
        if (result.graph.empty()) {
            record.status = RunStatus::EmptySample;
            record.message = "sampler stopped before admitting any node";
        } else {
            record.properties = compute_properties(result.graph);
            record.errors = relative_error(*record.properties, truth);
        }
        record.wall_time_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    } catch (const std::exception &e) {
        record.status = RunStatus::Failed;
        record.message = e.what();
    }
    return record;
}

double mean(const std::vector<double> &values) {
    if (values.empty()) {
        return kNaN;
    }
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_variance(const std::vector<double> &values) {
    if (values.size() < 2) {
        return values.empty() ? kNaN : 0.0;
    }
    const double m = mean(values);
    double sum = 0.0;
    for (double v : values) {
        sum += (v - m) * (v - m);
    }
    return sum / static_cast<double>(values.size() - 1);
}

} // namespace

std::vector<CellSummary> aggregate_runs(const AggregateReport &report) {
    const std::size_t fractions = report.fractions.size();
    std::vector<CellSummary> cells(report.variants.size() * fractions);
    struct Accumulator {
        std::vector<double> err_3, err_ed, vertices, requests, wall;
    };
    std::vector<Accumulator> acc(cells.size());
    for (std::size_t v = 0; v < report.variants.size(); ++v) {
        for (std::size_t f = 0; f < fractions; ++f) {
            cells[v * fractions + f].variant_index = v;
            cells[v * fractions + f].fraction_index = f;
        }
    }
    for (const auto &run : report.runs) {
        const std::size_t at = run.variant_index * fractions + run.fraction_index;
        auto &cell = cells[at];
        auto &a = acc[at];
        ++cell.runs;
        if (run.status == RunStatus::Failed) {
            ++cell.failed_runs;
            continue;
        }
        if (run.early_terminated) {
            ++cell.early_terminated_runs;
        }
        a.vertices.push_back(static_cast<double>(run.vertices_used));
        a.requests.push_back(static_cast<double>(run.ledger.total_requests));
        a.wall.push_back(run.wall_time_seconds);
        if (run.status == RunStatus::Ok) {
            ++cell.evaluated_runs;
            if (run.errors.aggregate_3) {
                a.err_3.push_back(*run.errors.aggregate_3);
            }
            if (run.errors.aggregate_ed) {
                a.err_ed.push_back(*run.errors.aggregate_ed);
            }
        }
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        cells[i].mean_err_3 = mean(acc[i].err_3);
        cells[i].mean_err_ed = mean(acc[i].err_ed);
        cells[i].variance_err_3 = sample_variance(acc[i].err_3);
        cells[i].mean_vertices_used = mean(acc[i].vertices);
        cells[i].mean_requests = mean(acc[i].requests);
        cells[i].mean_wall_time_seconds = mean(acc[i].wall);
    }
    return cells;
}

std::size_t AggregateReport::failure_count() const {
    return static_cast<std::size_t>(std::count_if(
        runs.begin(), runs.end(), [](const RunRecord &r) { return r.status == RunStatus::Failed; }));
}

std::vector<TimePoint> AggregateReport::time_series() const {
    std::vector<std::size_t> order(fractions.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fractions[a] < fractions[b]; });
    std::vector<TimePoint> series;
    if (order.empty()) {
        return series;
    }
    for (std::size_t v = 0; v < variants.size(); ++v) {
        const auto &base = cell(v, order.front());
        for (std::size_t f : order) {
            const auto &c = cell(v, f);
            TimePoint point;
            point.variant_index = v;
            point.fraction_index = f;
            point.mean_wall_time_seconds = c.mean_wall_time_seconds;
            point.mean_err_3 = c.mean_err_3;
            if (f == order.front()) {
                point.time_variation_pct = 0.0;
                point.result_improvement_pct = 0.0;
            } else {
                point.time_variation_pct =
                    (c.mean_wall_time_seconds - base.mean_wall_time_seconds) /
                    base.mean_wall_time_seconds * 100.0;
                point.result_improvement_pct =
                    (base.mean_err_3 - c.mean_err_3) / base.mean_err_3 * 100.0;
            }
            series.push_back(point);
        }
    }
    return series;
}

AggregateReport run_matrix(const ExperimentMatrix &matrix, std::span<const TestGraph> tgs) {
    if (matrix.run_count() == 0) {
        throw ParameterError("experiment matrix is empty");
    }
    if (tgs.size() != matrix.tgs.size()) {
        throw ParameterError("test graph count does not match the matrix");
    }
    for (double f : matrix.sample_fractions) {
        if (!(f > 0.0 && f <= 1.0)) {
            throw ParameterError("sample fractions must lie in (0, 1]");
        }
    }

    AggregateReport report;
    report.variants = matrix.variants;
    report.fractions = matrix.sample_fractions;
    report.iterations = matrix.iterations;
    report.settings = describe(matrix);

    std::vector<PropertyReport> truths;
    for (std::size_t t = 0; t < tgs.size(); ++t) {
        truths.push_back(compute_properties(tgs[t].graph));
        report.tgs.push_back({matrix.tgs[t].name, truths.back(), tgs[t].fully_analyzed.size(),
                              tgs[t].requests_spent});
    }

    report.runs.reserve(matrix.run_count());
    for (std::size_t t = 0; t < tgs.size(); ++t) {
        for (std::size_t v = 0; v < matrix.variants.size(); ++v) {
            for (std::size_t f = 0; f < matrix.sample_fractions.size(); ++f) {
                for (std::size_t i = 0; i < matrix.iterations; ++i) {
                    RunRecord record;
                    record.tg_index = t;
                    record.variant_index = v;
                    record.fraction_index = f;
                    record.iteration = i;
                    record.seed = derive_run_seed(matrix.base_seed, t,
                                                  matrix.variants[v].distribution,
                                                  matrix.sample_fractions[f], i);
                    report.runs.push_back(std::move(record));
                }
            }
        }
    }

    std::size_t workers = matrix.workers == 0 ? std::thread::hardware_concurrency() : matrix.workers;
    workers = std::clamp<std::size_t>(workers, 1, report.runs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < report.runs.size(); i = next++) {
            auto &run = report.runs[i];
            run = execute_run(matrix, tgs[run.tg_index], truths[run.tg_index], std::move(run));
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }

    report.cells = aggregate_runs(report);
    return report;
}

AggregateReport run_matrix(const ExperimentMatrix &matrix) {
    if (matrix.run_count() == 0) {
        throw ParameterError("experiment matrix is empty");
    }
    const auto tgs = prepare_test_graphs(matrix);
    return run_matrix(matrix, tgs);
}

namespace {

std::string errors_csv(const AggregateReport &report) {
    std::string out = "variant,fraction,mean_err_3,mean_err_ed,variance\n";
    for (const auto &c : report.cells) {
        out += fmt::format("{},{},{},{},{}\n", report.variants[c.variant_index].name(),
                           fmt_double(report.fractions[c.fraction_index]),
                           fmt_double(c.mean_err_3), fmt_double(c.mean_err_ed),
                           fmt_double(c.variance_err_3));
    }
    return out;
}

std::string conservation_csv(const AggregateReport &report) {
    std::string out = "variant,mean_vertices_used,mean_requests,mean_err_3\n";
    for (std::size_t v = 0; v < report.variants.size(); ++v) {
        std::vector<double> vertices, requests, err;
        for (const auto &run : report.runs) {
            if (run.variant_index != v || run.status == RunStatus::Failed) {
                continue;
            }
            vertices.push_back(static_cast<double>(run.vertices_used));
            requests.push_back(static_cast<double>(run.ledger.total_requests));
            if (run.status == RunStatus::Ok && run.errors.aggregate_3) {
                err.push_back(*run.errors.aggregate_3);
            }
        }
        out += fmt::format("{},{},{},{}\n", report.variants[v].name(), fmt_double(mean(vertices)),
                           fmt_double(mean(requests)), fmt_double(mean(err)));
    }
    return out;
}

std::string timeseries_csv(const AggregateReport &report) {
    std::string out = "variant,fraction,mean_wall_time_s,time_variation_pct,mean_err_3,"
                      "result_improvement_pct\n";
    for (const auto &p : report.time_series()) {
        out += fmt::format("{},{},{},{},{},{}\n", report.variants[p.variant_index].name(),
                           fmt_double(report.fractions[p.fraction_index]),
                           fmt_double(p.mean_wall_time_seconds), fmt_double(p.time_variation_pct),
                           fmt_double(p.mean_err_3), fmt_double(p.result_improvement_pct));
    }
    return out;
}

std::string runs_csv(const AggregateReport &report) {
    std::string out =
        "tg,variant,fraction,iteration,seed,status,early_terminated,pool_size,vertices_used,"
        "sample_edges,requests_total,requests_degree,requests_pages,rejected_candidate_requests,"
        "clock_hours,err_mean_degree,err_clustering,err_assortativity,err_edges,err_3,err_ed,"
        "wall_time_s,message\n";
    for (const auto &r : report.runs) {
        auto message = r.message;
        std::replace(message.begin(), message.end(), ',', ';');
        std::replace(message.begin(), message.end(), '\n', ' ');
        out += fmt::format(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            report.tgs[r.tg_index].name, report.variants[r.variant_index].name(),
            fmt_double(report.fractions[r.fraction_index]), r.iteration, r.seed,
            to_string(r.status), r.early_terminated ? 1 : 0, r.pool_size, r.vertices_used,
            r.sample_edges, r.ledger.total_requests, r.ledger.degree_requests,
            r.ledger.neighbor_page_requests, r.rejected_candidate_requests,
            fmt_double(r.ledger.simulated_clock_hours), fmt_optional(r.errors.mean_degree),
            fmt_optional(r.errors.clustering), fmt_optional(r.errors.assortativity),
            fmt_optional(r.errors.edges), fmt_optional(r.errors.aggregate_3),
            fmt_optional(r.errors.aggregate_ed), fmt_double(r.wall_time_seconds), message);
    }
    return out;
}

std::string metadata_text(const AggregateReport &report) {
    Metadata meta = report.settings;
    meta.emplace_back("convention.mean_degree", "total degree 2E/N");
    meta.emplace_back("convention.clustering",
                      "global transitivity 3*triangles/connected triples on the undirected "
                      "projection (reciprocal edges collapsed)");
    meta.emplace_back("convention.assortativity",
                      "Pearson correlation of endpoint degrees on the undirected projection; "
                      "undefined for zero variance and then excluded from aggregates");
    meta.emplace_back("convention.components", "weakly connected components");
    meta.emplace_back("convention.relative_error",
                      "|sampled - truth| / |truth|; incomparable when truth is 0 or undefined");
    meta.emplace_back("convention.mean_err_3", "mean of mean degree, clustering, assortativity");
    meta.emplace_back("convention.mean_err_ed", "mean_err_3 properties plus edge count");
    meta.emplace_back("convention.variance", "sample variance (n-1) of per-run err_3");
    meta.emplace_back("convention.errors_unit", "fraction (0.1 = 10%)");
    meta.emplace_back("convention.wall_time", "sampling plus property computation per run");
    meta.emplace_back("convention.time_series_base", "smallest sample fraction of each variant");
    meta.emplace_back("convention.selective_gate",
                      "top ceil(A% of set) nodes by total degree hold at least B% of the set's "
                      "degree sum; candidate set size max(1, round(set_fraction * target pool))");
    meta.emplace_back("convention.rejected_candidates",
                      "charged one degree request each; reported separately per run in runs.csv");
    meta.emplace_back("note.magnitudes",
                      "synthetic test graphs: trends and orderings are the reproducible content, "
                      "not absolute error magnitudes");
    for (std::size_t t = 0; t < report.tgs.size(); ++t) {
        const auto &tg = report.tgs[t];
        const auto prefix = "truth." + std::to_string(t) + ".";
        meta.emplace_back(prefix + "name", tg.name);
        meta.emplace_back(prefix + "vertices", std::to_string(tg.truth.vertices));
        meta.emplace_back(prefix + "edges", std::to_string(tg.truth.edges));
        meta.emplace_back(prefix + "mean_degree", fmt_double(tg.truth.mean_degree));
        meta.emplace_back(prefix + "clustering", fmt_optional(tg.truth.clustering_coefficient));
        meta.emplace_back(prefix + "assortativity", fmt_optional(tg.truth.assortativity));
        meta.emplace_back(prefix + "components", std::to_string(tg.truth.components));
        meta.emplace_back(prefix + "fully_analyzed", std::to_string(tg.fully_analyzed));
        meta.emplace_back(prefix + "crawl_requests", std::to_string(tg.crawl_requests.total_requests));
    }
    meta.emplace_back("runs.total", std::to_string(report.runs.size()));
    meta.emplace_back("runs.failed", std::to_string(report.failure_count()));

    std::string out;
    for (const auto &[key, value] : meta) {
        out += key + " = " + value + "\n";
    }
    for (const auto &r : report.runs) {
        if (r.status == RunStatus::Failed) {
            out += fmt::format("failure = {} {} {} #{}: {}\n", report.tgs[r.tg_index].name,
                               report.variants[r.variant_index].name(),
                               fmt_double(report.fractions[r.fraction_index]), r.iteration,
                               r.message);
        }
    }
    return out;
}

} // namespace

void emit_reports(const AggregateReport &report, const std::filesystem::path &out_dir) {
    if (report.runs.empty() || report.cells.empty()) {
        throw ParameterError("nothing to report: the matrix produced no runs");
    }
    const std::vector<std::pair<std::string, std::string>> files = {
        {"errors.csv", errors_csv(report)},
        {"conservation.csv", conservation_csv(report)},
        {"timeseries.csv", timeseries_csv(report)},
        {"runs.csv", runs_csv(report)},
        {"metadata.txt", metadata_text(report)},
    };

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
        throw IoError("cannot create report directory " + out_dir.string());
    }
    // Stage into temporaries so a failure leaves existing reports untouched.
    std::vector<std::filesystem::path> staged;
    auto discard = [&] {
        for (const auto &path : staged) {
            std::filesystem::remove(path, ec);
        }
    };
    for (const auto &[name, content] : files) {
        auto tmp = out_dir / (name + ".tmp");
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (out) {
            staged.push_back(tmp);
            out << content;
            out.close();
        }
        if (!out) {
            discard();
            throw IoError("cannot write " + (out_dir / name).string());
        }
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::filesystem::rename(staged[i], out_dir / files[i].first, ec);
        if (ec) {
            discard();
            throw IoError("cannot write " + (out_dir / files[i].first).string());
        }
    }
}

} // namespace osnsample
