// osnsample command-line tool: generate, crawl, sample, evaluate, report.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "osnsample/api_sim.hpp"
#include "osnsample/config.hpp"
#include "osnsample/crawler.hpp"
#include "osnsample/edge_list.hpp"
#include "osnsample/errors.hpp"
#include "osnsample/generators.hpp"
#include "osnsample/harness.hpp"
#include "osnsample/metrics.hpp"
#include "osnsample/sampler.hpp"

namespace fs = std::filesystem;
using namespace osnsample;
using nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kBudget = 3 };

struct Common {
    std::string config_path;
    std::vector<std::string> overrides;
    bool json_summary = false;
    int verbosity = 0;
};

/// Config file, then --set overrides, then explicit flags: later wins.
class Settings {
public:
    Settings(const Common &common, std::vector<std::pair<std::string, std::string>> flags) {
        if (!common.config_path.empty()) {
            doc_ = ConfigDocument::load(common.config_path);
        }
        for (const auto &o : common.overrides) {
            doc_.apply_override(o);
        }
        for (const auto &[key, value] : flags) {
            doc_.apply_override(key + "=" + value);
        }
    }

    std::string get(const std::string &dotted, const std::string &fallback) {
        const auto dot = dotted.rfind('.');
        const auto *value = doc_.find(dotted.substr(0, dot), dotted.substr(dot + 1));
        std::string result = value ? *value : fallback;
        resolved_[dotted] = result;
        return result;
    }
    std::uint64_t get_uint(const std::string &key, std::uint64_t fallback) {
        return parse_uint(get(key, std::to_string(fallback)), key);
    }
    double get_double(const std::string &key, double fallback) {
        return parse_double(get(key, fmt::format("{}", fallback)), key);
    }

    void record(const std::string &key, const std::string &value) { resolved_[key] = value; }

    const ConfigDocument &document() const { return doc_; }
    const std::map<std::string, std::string> &resolved() const { return resolved_; }

private:
    ConfigDocument doc_;
    std::map<std::string, std::string> resolved_;
};

/// Collects explicitly given flags as section.key=value overrides.
class FlagSet {
public:
    void add(CLI::Option *opt, std::string key, std::string *target) {
        entries_.push_back({opt, std::move(key), target});
    }
    std::vector<std::pair<std::string, std::string>> given() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto &e : entries_) {
            if (e.opt->count() > 0) {
                out.emplace_back(e.key, *e.target);
            }
        }
        return out;
    }

private:
    struct Entry {
        CLI::Option *opt;
        std::string key;
        std::string *target;
    };
    std::vector<Entry> entries_;
};

void add_common(CLI::App *app, Common &common) {
    app->add_option("--config", common.config_path, "Key-value config file");
    app->add_option("--set", common.overrides, "Override a config value: section.key=value");
    app->add_flag("--json-summary", common.json_summary,
                  "Print the resolved run manifest as JSON on stdout");
    app->add_flag("-v,--verbose", common.verbosity, "Print the resolved configuration to stderr");
}

void finish(const Common &common, const std::string &subcommand, const Settings &settings,
            ordered_json result) {
    if (common.verbosity > 0) {
        for (const auto &[key, value] : settings.resolved()) {
            std::cerr << key << " = " << value << '\n';
        }
    }
    if (common.json_summary) {
        ordered_json manifest;
        manifest["subcommand"] = subcommand;
        manifest["config"] = settings.resolved();
        manifest["result"] = std::move(result);
        std::cout << manifest.dump(2) << '\n';
    }
}

Metadata resolved_metadata(const Settings &settings) {
    Metadata meta;
    for (const auto &[key, value] : settings.resolved()) {
        meta.emplace_back("config." + key, value);
    }
    return meta;
}

ApiConfig api_config(Settings &s) {
    ApiConfig api;
    api.page_size = s.get_uint("api.page_size", api.page_size);
    const auto limit = s.get_uint("api.hourly_limit", *api.hourly_limit);
    api.hourly_limit = limit == 0 ? std::nullopt : std::optional<std::uint64_t>(limit);
    const auto budget = s.get_uint("api.request_budget", 0);
    api.request_budget = budget == 0 ? std::nullopt : std::optional<std::uint64_t>(budget);
    return api;
}

std::string format_optional(const std::optional<double> &v) {
    return v ? fmt::format("{}", *v) : std::string("undefined");
}

void append_properties(Metadata &meta, const std::string &prefix, const PropertyReport &p) {
    meta.emplace_back(prefix + "vertices", std::to_string(p.vertices));
    meta.emplace_back(prefix + "edges", std::to_string(p.edges));
    meta.emplace_back(prefix + "mean_degree", fmt::format("{}", p.mean_degree));
    meta.emplace_back(prefix + "clustering", format_optional(p.clustering_coefficient));
    meta.emplace_back(prefix + "assortativity", format_optional(p.assortativity));
    meta.emplace_back(prefix + "components", std::to_string(p.components));
}

ordered_json to_json(const std::optional<double> &v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

// --- generate -------------------------------------------------------------

struct GenerateArgs {
    std::string model, nodes, degree, edges_per_node, offset, source_preference, probability, seed,
        out;
};

int run_generate(const Common &common, const FlagSet &flags) {
    Settings s(common, flags.given());
    GeneratorSpec spec;
    spec.model = parse_graph_model(s.get("generate.model", "preferential-attachment"));
    spec.node_target = s.get_uint("generate.nodes", 10000);
    spec.edges_per_node = s.get_uint("generate.edges_per_node", spec.edges_per_node);
    spec.attachment_offset = s.get_double("generate.attachment_offset", spec.attachment_offset);
    spec.source_preference = s.get_double("generate.source_preference", spec.source_preference);
    spec.edge_probability = s.get_double("generate.edge_probability", spec.edge_probability);
    spec.uniform_degree = s.get_uint("generate.degree", spec.uniform_degree);
    spec.rng_seed = s.get_uint("generate.seed", 0);
    const fs::path out = s.get("generate.out", "graph.txt");

    const auto graph = generate(spec);
    save_edge_list(graph, out);
    finish(common, "generate", s,
           {{"out", out.string()},
            {"nodes", graph.node_count()},
            {"edges", graph.edge_count()}});
    return kOk;
}

// --- crawl ----------------------------------------------------------------

struct CrawlArgs {
    std::string graph, seeds, top_seeds, min_fa, max_depth, out;
};

int run_crawl(const Common &common, const FlagSet &flags) {
    Settings s(common, flags.given());
    const fs::path graph_path = s.get("crawl.graph", "graph.txt");
    const fs::path out = s.get("crawl.out", "tg.txt");
    const auto api_cfg = api_config(s);
    const auto seed_labels = split_list(s.get("crawl.seeds", ""));
    const auto top = s.get_uint("crawl.top_seeds", 3);
    const auto min_fa = s.get_uint("crawl.min_fully_analyzed", 25000);
    const auto depth = s.get_uint("crawl.max_depth", 0);

    const auto truth = load_edge_list(graph_path);
    CrawlSpec spec;
    spec.min_fully_analyzed = min_fa;
    if (depth > 0) {
        spec.max_depth = depth;
    }
    if (seed_labels.empty()) {
        spec.seeds = top_in_degree_nodes(truth, top);
    } else {
        const auto &labels = truth.labels();
        for (const auto &text : seed_labels) {
            const auto label = static_cast<Label>(parse_uint(text, "crawl.seeds"));
            auto it = std::lower_bound(labels.begin(), labels.end(), label);
            if (it == labels.end() || *it != label) {
                throw ParameterError("seed " + text + " not in ground truth");
            }
            spec.seeds.push_back(static_cast<NodeId>(it - labels.begin()));
        }
    }
    ApiSimulator api(truth, api_cfg);
    const auto tg = bfs_crawl(api, spec);
    save_test_graph(tg, out);

    const auto components = tg.graph.empty() ? 0 : weak_component_count(tg.graph);
    finish(common, "crawl", s,
           {{"out", out.string()},
            {"nodes", tg.graph.node_count()},
            {"edges", tg.graph.edge_count()},
            {"fully_analyzed", tg.fully_analyzed.size()},
            {"components", components},
            {"requests", tg.requests_spent.total_requests},
            {"simulated_clock_hours", tg.requests_spent.simulated_clock_hours},
            {"budget_exhausted", tg.budget_exhausted}});
    if (tg.budget_exhausted) {
        std::cerr << "osnsample: request budget exhausted after " << tg.fully_analyzed.size()
                  << " fully analyzed nodes; partial test graph written\n";
        return kBudget;
    }
    return kOk;
}

// --- sample ---------------------------------------------------------------

int run_sample(const Common &common, const FlagSet &flags) {
    Settings s(common, flags.given());
    const fs::path tg_path = s.get("sample.tg", "tg.txt");
    const fs::path out = s.get("sample.out", "sample.txt");
    auto [variant, distribution] = parse_variant_name(s.get("sample.variant", "rns"));
    SamplerConfig config;
    config.variant = variant;
    config.distribution = distribution;
    config.target_fraction = s.get_double("sample.fraction", 0.1);
    config.rng_seed = s.get_uint("sample.seed", 0);
    config.set_fraction = s.get_double("sampler.set_fraction", config.set_fraction);
    config.max_tries = s.get_uint("sampler.max_tries", config.max_tries);
    const auto api_cfg = api_config(s);

    const auto tg = load_test_graph(tg_path);
    ApiSimulator api(tg.graph, api_cfg);
    const auto result = sample(api, tg.graph, config);
    const auto truth = compute_properties(tg.graph);

    Metadata meta = resolved_metadata(s);
    meta.emplace_back("variant", variant_name(variant, distribution));
    meta.emplace_back("fraction", fmt::format("{}", config.target_fraction));
    meta.emplace_back("seed", std::to_string(config.rng_seed));
    std::string pool;
    for (NodeId u : result.pool) {
        pool += (pool.empty() ? "" : " ") + std::to_string(tg.graph.label(u));
    }
    meta.emplace_back("pool", pool);
    meta.emplace_back("pool_size", std::to_string(result.pool.size()));
    meta.emplace_back("vertices_used", std::to_string(result.vertices_used));
    meta.emplace_back("early_terminated", result.early_terminated ? "true" : "false");
    meta.emplace_back("sets_drawn", std::to_string(result.tries_history.size()));
    meta.emplace_back("requests_total", std::to_string(result.ledger.total_requests));
    meta.emplace_back("requests_degree", std::to_string(result.ledger.degree_requests));
    meta.emplace_back("requests_pages", std::to_string(result.ledger.neighbor_page_requests));
    meta.emplace_back("rejected_candidate_requests",
                      std::to_string(result.rejected_candidate_requests));
    meta.emplace_back("simulated_clock_hours",
                      fmt::format("{}", result.ledger.simulated_clock_hours));
    append_properties(meta, "truth.", truth);

    ordered_json summary = {{"out", out.string()},
                            {"variant", variant_name(variant, distribution)},
                            {"pool_size", result.pool.size()},
                            {"vertices_used", result.vertices_used},
                            {"edges", result.graph.edge_count()},
                            {"requests", result.ledger.total_requests},
                            {"early_terminated", result.early_terminated}};
    if (!result.graph.empty()) {
        const auto props = compute_properties(result.graph);
        const auto err = relative_error(props, truth);
        append_properties(meta, "sample.", props);
        meta.emplace_back("err.mean_degree", format_optional(err.mean_degree));
        meta.emplace_back("err.clustering", format_optional(err.clustering));
        meta.emplace_back("err.assortativity", format_optional(err.assortativity));
        meta.emplace_back("err.edges", format_optional(err.edges));
        meta.emplace_back("err.aggregate_3", format_optional(err.aggregate_3));
        meta.emplace_back("err.aggregate_ed", format_optional(err.aggregate_ed));
        summary["err_3"] = to_json(err.aggregate_3);
        summary["err_ed"] = to_json(err.aggregate_ed);
    }
    save_edge_list(result.graph, out);
    auto meta_file = out;
    meta_file += ".meta";
    save_metadata(meta, meta_file);
    finish(common, "sample", s, summary);
    return kOk;
}

// --- evaluate -------------------------------------------------------------

int run_evaluate(const Common &common, const FlagSet &flags) {
    Settings s(common, flags.given());
    auto matrix = matrix_from_config(s.document());
    for (const auto &[key, value] : describe(matrix)) {
        s.record(key, value);
    }
    if (common.verbosity > 0) {
        std::cerr << "osnsample: running " << matrix.run_count() << " runs\n";
    }
    const auto report = run_matrix(matrix);
    emit_reports(report, matrix.out_dir);

    ordered_json summary = {{"out_dir", matrix.out_dir.string()},
                            {"runs", report.runs.size()},
                            {"failed_runs", report.failure_count()},
                            {"rows", report.cells.size()}};
    finish(common, "evaluate", s, summary);
    return kOk;
}

// --- report ---------------------------------------------------------------

std::vector<std::vector<std::string>> read_csv(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

void print_table(const std::vector<std::vector<std::string>> &rows) {
    std::vector<std::size_t> width;
    for (const auto &row : rows) {
        width.resize(std::max(width.size(), row.size()), 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            width[i] = std::max(width[i], row[i].size());
        }
    }
    for (const auto &row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += fmt::format("{:<{}}", row[i], width[i] + 2);
        }
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        std::cout << line << '\n';
    }
}

int run_report(const Common &common, const FlagSet &flags) {
    Settings s(common, flags.given());
    const fs::path input = s.get("report.input", "report");
    ordered_json summary = {{"input", input.string()}};
    if (fs::is_directory(input)) {
        const auto errors = read_csv(input / "errors.csv");
        std::cout << "Mean relative error per variant and sample fraction\n";
        print_table(errors);
        const auto conservation = input / "conservation.csv";
        if (fs::exists(conservation)) {
            std::cout << "\nVertices conservation\n";
            print_table(read_csv(conservation));
        }
        summary["rows"] = errors.empty() ? 0 : errors.size() - 1;
    } else {
        fs::path meta_file = input;
        if (meta_file.extension() != ".meta") {
            meta_file += ".meta";
        }
        const auto meta = load_metadata(meta_file);
        auto value = [&](const char *key) {
            const auto *v = find_value(meta, key);
            return v ? *v : std::string("-");
        };
        print_table({{"variant", "fraction", "pool_size", "vertices_used", "requests",
                      "early_terminated", "err_mean_degree", "err_clustering",
                      "err_assortativity", "err_edges", "mean_err_3", "mean_err_ed"},
                     {value("variant"), value("fraction"), value("pool_size"),
                      value("vertices_used"), value("requests_total"), value("early_terminated"),
                      value("err.mean_degree"), value("err.clustering"),
                      value("err.assortativity"), value("err.edges"), value("err.aggregate_3"),
                      value("err.aggregate_ed")}});
        summary["variant"] = value("variant");
        summary["mean_err_3"] = value("err.aggregate_3");
    }
    finish(common, "report", s, summary);
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Random node sampling of directed social graphs under a simulated API "
                 "request budget"};
    app.require_subcommand(1);

    Common common;

    GenerateArgs gen;
    FlagSet gen_flags;
    auto *generate_cmd = app.add_subcommand("generate", "Write a synthetic graph as an edge list");
    add_common(generate_cmd, common);
    gen_flags.add(generate_cmd->add_option("--model", gen.model,
                                           "preferential-attachment | uniform-random | regular"),
                  "generate.model", &gen.model);
    gen_flags.add(generate_cmd->add_option("--nodes", gen.nodes, "Node count"), "generate.nodes",
                  &gen.nodes);
    gen_flags.add(generate_cmd->add_option("--degree", gen.degree, "Regular: in/out degree"),
                  "generate.degree", &gen.degree);
    gen_flags.add(generate_cmd->add_option("-m,--edges-per-node", gen.edges_per_node,
                                           "Preferential attachment: edges per new node"),
                  "generate.edges_per_node", &gen.edges_per_node);
    gen_flags.add(generate_cmd->add_option("--attachment-offset", gen.offset,
                                           "Preferential attachment: in-degree offset"),
                  "generate.attachment_offset", &gen.offset);
    gen_flags.add(generate_cmd->add_option("--source-preference", gen.source_preference,
                                           "Preferential attachment: share of edges between "
                                           "existing nodes"),
                  "generate.source_preference", &gen.source_preference);
    gen_flags.add(generate_cmd->add_option("-p,--edge-probability", gen.probability,
                                           "Uniform random: edge probability"),
                  "generate.edge_probability", &gen.probability);
    gen_flags.add(generate_cmd->add_option("--seed", gen.seed, "RNG seed"), "generate.seed",
                  &gen.seed);
    gen_flags.add(generate_cmd->add_option("-o,--out", gen.out, "Output edge list"),
                  "generate.out", &gen.out);

    CrawlArgs crawl;
    FlagSet crawl_flags;
    std::string page_size, hourly_limit, budget;
    auto *crawl_cmd = app.add_subcommand("crawl", "Breadth-first crawl a ground-truth graph");
    add_common(crawl_cmd, common);
    crawl_flags.add(crawl_cmd->add_option("--graph", crawl.graph, "Ground-truth edge list"),
                    "crawl.graph", &crawl.graph);
    crawl_flags.add(crawl_cmd->add_option("--seeds", crawl.seeds, "Comma-separated seed labels"),
                    "crawl.seeds", &crawl.seeds);
    crawl_flags.add(crawl_cmd->add_option("--top-seeds", crawl.top_seeds,
                                          "Use the k highest in-degree nodes as seeds"),
                    "crawl.top_seeds", &crawl.top_seeds);
    crawl_flags.add(crawl_cmd->add_option("--min", crawl.min_fa, "Minimum fully analyzed nodes"),
                    "crawl.min_fully_analyzed", &crawl.min_fa);
    crawl_flags.add(crawl_cmd->add_option("--max-depth", crawl.max_depth,
                                          "Deepest fully analyzed BFS level (0 = unlimited)"),
                    "crawl.max_depth", &crawl.max_depth);
    crawl_flags.add(crawl_cmd->add_option("-o,--out", crawl.out, "Output test graph"),
                    "crawl.out", &crawl.out);

    std::string tg_path, variant, fraction, seed, set_fraction, max_tries, sample_out;
    FlagSet sample_flags;
    auto *sample_cmd = app.add_subcommand("sample", "Sample a test graph");
    add_common(sample_cmd, common);
    sample_flags.add(sample_cmd->add_option("--tg", tg_path, "Test graph edge list"), "sample.tg",
                     &tg_path);
    sample_flags.add(sample_cmd->add_option("--variant", variant,
                                            "rns | rnse | rns-85-15 | rnse-80-20 | ..."),
                     "sample.variant", &variant);
    sample_flags.add(sample_cmd->add_option("--fraction", fraction, "Target sample fraction"),
                     "sample.fraction", &fraction);
    sample_flags.add(sample_cmd->add_option("--seed", seed, "RNG seed"), "sample.seed", &seed);
    sample_flags.add(sample_cmd->add_option("--set-fraction", set_fraction,
                                            "Candidate set size relative to the target pool"),
                     "sampler.set_fraction", &set_fraction);
    sample_flags.add(sample_cmd->add_option("--max-tries", max_tries,
                                            "Consecutive rejections before stopping"),
                     "sampler.max_tries", &max_tries);
    sample_flags.add(sample_cmd->add_option("-o,--out", sample_out, "Output sample edge list"),
                     "sample.out", &sample_out);

    for (auto [cmd, flags] : {std::pair{crawl_cmd, &crawl_flags}, {sample_cmd, &sample_flags}}) {
        flags->add(cmd->add_option("--page-size", page_size, "Neighbors per request"),
                   "api.page_size", &page_size);
        flags->add(cmd->add_option("--hourly-limit", hourly_limit,
                                   "Requests per simulated hour (0 disables the clock)"),
                   "api.hourly_limit", &hourly_limit);
        flags->add(cmd->add_option("--budget", budget,
                                   "Strict mode: total request cap (0 = unlimited)"),
                   "api.request_budget", &budget);
    }

    std::string out_dir, workers;
    FlagSet eval_flags;
    auto *evaluate_cmd = app.add_subcommand("evaluate", "Run an experiment matrix");
    add_common(evaluate_cmd, common);
    eval_flags.add(evaluate_cmd->add_option("-o,--out", out_dir, "Report directory"),
                   "matrix.out_dir", &out_dir);
    eval_flags.add(evaluate_cmd->add_option("--workers", workers, "Worker threads (0 = all)"),
                   "matrix.workers", &workers);

    std::string input;
    FlagSet report_flags;
    auto *report_cmd = app.add_subcommand("report", "Print an existing report");
    add_common(report_cmd, common);
    report_flags.add(report_cmd->add_option("input", input,
                                            "Report directory or sample output file"),
                     "report.input", &input);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (generate_cmd->parsed()) {
            return run_generate(common, gen_flags);
        }
        if (crawl_cmd->parsed()) {
            return run_crawl(common, crawl_flags);
        }
        if (sample_cmd->parsed()) {
            return run_sample(common, sample_flags);
        }
        if (evaluate_cmd->parsed()) {
            if (common.config_path.empty()) {
                throw ParameterError("evaluate needs --config");
            }
            return run_evaluate(common, eval_flags);
        }
        if (report_cmd->parsed()) {
            return run_report(common, report_flags);
        }
    } catch (const BudgetError &e) {
        std::cerr << "osnsample: budget error: " << e.what() << '\n';
        return kBudget;
    } catch (const IoError &e) {
        std::cerr << "osnsample: I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const ParseError &e) {
        std::cerr << "osnsample: parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const ValidationError &e) {
        std::cerr << "osnsample: validation error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error &e) {
        std::cerr << "osnsample: parameter error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
