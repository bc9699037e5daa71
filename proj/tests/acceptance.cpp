// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracles.hpp"
#include "osnsample/api_sim.hpp"
#include "osnsample/crawler.hpp"
#include "osnsample/generators.hpp"
#include "osnsample/harness.hpp"
#include "osnsample/metrics.hpp"
#include "osnsample/sampler.hpp"

using namespace osnsample;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void check(int id, const std::string &title, double limit_seconds,
           const std::function<Outcome()> &body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception &e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= limit_seconds) {
        out.pass = false;
        out.detail += fmt::format("; over the {} s limit", limit_seconds);
    }
    failures += !out.pass;
    std::cout << fmt::format("{} criterion {:>2}: {} ({}; {:.2f} s)\n", out.pass ? "PASS" : "FAIL",
                             id, title, out.detail, secs)
              << std::flush;
}

// The heavy-tail test graph used by the trend criteria.
GeneratorSpec trend_graph_spec() {
    return {.node_target = 50000, .edges_per_node = 10, .attachment_offset = 0.3,
            .source_preference = 1.0, .rng_seed = 11};
}

ExperimentMatrix trend_matrix(std::size_t workers) {
    ExperimentMatrix m;
    TgSource tg;
    tg.name = "pa-50k";
    tg.generator = trend_graph_spec();
    m.tgs.push_back(tg);
    m.iterations = 10;
    m.base_seed = 2024;
    m.workers = workers;
    return m;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t variant_index(const AggregateReport &r, const std::string &name) {
    for (std::size_t v = 0; v < r.variants.size(); ++v) {
        if (r.variants[v].name() == name) {
            return v;
        }
    }
    throw std::runtime_error("variant missing: " + name);
}

/// Mean vertices_used over the runs of the given variants at one fraction.
double pooled_vertices(const AggregateReport &r, const std::vector<std::string> &names,
                       std::size_t f) {
    double sum = 0;
    std::size_t n = 0;
    for (const auto &name : names) {
        const auto v = variant_index(r, name);
        for (const auto &run : r.runs) {
            if (run.variant_index == v && run.fraction_index == f) {
                sum += static_cast<double>(run.vertices_used);
                ++n;
            }
        }
    }
    return sum / static_cast<double>(n);
}

} // namespace

int main() {
    check(1, "request-cost oracle", 1.0, [] {
        Outcome out;
        // Worked example: 10,000 followers, 5,000 followings.
        std::vector<Edge> e;
        for (NodeId v = 1; v <= 10000; ++v) {
            e.emplace_back(v, 0);
        }
        for (NodeId v = 10001; v <= 15000; ++v) {
            e.emplace_back(0, v);
        }
        const DirectedGraph celebrity(15001, e);
        ApiSimulator example(celebrity, {.page_size = 5000});
        example.query_degree(0);
        example.fetch_neighbors(0, Direction::In);
        example.fetch_neighbors(0, Direction::Out);
        const auto l = example.ledger_snapshot();
        out.pass = l.total_requests == 4 && l.degree_requests == 1 &&
                   l.neighbor_page_requests == 3;

        const auto g = generate({.node_target = 20000, .edges_per_node = 10,
                                 .attachment_offset = 0.3, .source_preference = 1.0,
                                 .rng_seed = 1});
        std::vector<NodeId> all(g.node_count());
        std::iota(all.begin(), all.end(), 0);
        std::mt19937_64 rng(1);
        const auto nodes = draw_candidate_set(rng, all, 1000);
        std::size_t mismatches = 0;
        std::uint64_t max_degree = 0;
        // The small page size exercises multi-page fetches.
        for (std::size_t page : {5000, 25}) {
            ApiSimulator api(g, {.page_size = page});
            for (NodeId u : nodes) {
                const auto before = api.ledger_snapshot().total_requests;
                api.query_degree(u);
                api.fetch_neighbors(u, Direction::In);
                api.fetch_neighbors(u, Direction::Out);
                const auto spent = api.ledger_snapshot().total_requests - before;
                mismatches +=
                    spent != oracle::full_analysis_cost(g.in_degree(u), g.out_degree(u), page);
                max_degree = std::max<std::uint64_t>(max_degree, g.in_degree(u));
            }
        }
        out.pass = out.pass && mismatches == 0;
        out.detail = fmt::format("worked example {} requests, {} mismatches over 1000 nodes at page "
                                 "sizes 5000 and 25 (max in-degree {})",
                                 l.total_requests, mismatches, max_degree);
        return out;
    });

    check(2, "metrics oracle on 500 graphs of <= 8 nodes", 10.0, [] {
        std::mt19937_64 rng(2);
        std::uniform_int_distribution<std::size_t> size(1, 8);
        std::uniform_real_distribution<double> density(0.0, 0.8);
        std::size_t mismatches = 0;
        for (int i = 0; i < 500; ++i) {
            const auto g = oracle::random_graph(rng, size(rng), density(rng));
            mismatches += !oracle::matches(compute_properties(g), oracle::properties(g), 1e-9);
        }
        return Outcome{mismatches == 0, fmt::format("{} mismatches at tolerance 1e-9", mismatches)};
    });

    check(3, "pareto check vs sort-and-sum on 10000 multisets", 5.0, [] {
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<std::size_t> len(1, 200);
        std::uniform_real_distribution<double> expo(0.0, 14.0);
        std::size_t mismatches = 0, passes = 0;
        for (int i = 0; i < 10000; ++i) {
            std::vector<std::uint64_t> d(len(rng));
            for (auto &x : d) {
                x = static_cast<std::uint64_t>(std::exp(expo(rng))) - 1;
            }
            for (auto dist : {k85_15, k80_20, k75_25}) {
                const bool got = pareto_check(d, dist);
                passes += got;
                mismatches += got != oracle::pareto(d, dist.top_percent, dist.share_percent);
            }
        }
        return Outcome{mismatches == 0, fmt::format("{} mismatches over 30000 checks, {} passing",
                                                    mismatches, passes)};
    });

    check(4, "identity sampling on a 50,000-node TG", 60.0, [] {
        const auto g = generate(trend_graph_spec());
        const auto truth = compute_properties(g);
        Outcome out;
        for (auto variant : {SamplerVariant::RNS, SamplerVariant::RNSE}) {
            ApiSimulator api(g);
            const auto r = sample(api, g, {.variant = variant, .target_fraction = 1.0});
            const auto err = relative_error(compute_properties(r.graph), truth);
            const bool zero = err.all_comparable() && *err.mean_degree == 0 &&
                              *err.clustering == 0 && *err.assortativity == 0 &&
                              *err.edges == 0 && *err.aggregate_ed == 0;
            out.pass = out.pass && zero && r.graph == g;
            out.detail += fmt::format("{}{} err_ed={}", out.detail.empty() ? "" : ", ",
                                      variant == SamplerVariant::RNS ? "rns" : "rnse",
                                      err.aggregate_ed.value_or(-1));
        }
        return out;
    });

    check(5, "RNSE edge set on 100 random instances", 10.0, [] {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<std::size_t> size(2, 120);
        std::uniform_real_distribution<double> frac(0.01, 0.6);
        std::size_t mismatches = 0, max_edges = 0;
        for (int i = 0; i < 100; ++i) {
            const std::size_t n = size(rng);
            const double p = std::min(0.5, 1000.0 / static_cast<double>(n * (n - 1)) * 0.9);
            const auto g = oracle::random_graph(rng, n, p);
            max_edges = std::max(max_edges, g.edge_count());
            std::vector<NodeId> all(n);
            std::iota(all.begin(), all.end(), 0);
            const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(frac(rng) * n));
            SampleResult base;
            base.pool = draw_candidate_set(rng, all, k);
            ApiSimulator api(g);
            const auto r = extend_with_neighbors(api, g, base);
            const auto got = r.graph.labelled_edges();
            mismatches += std::set<std::pair<Label, Label>>(got.begin(), got.end()) !=
                          oracle::incident_edges(g, base.pool);
        }
        return Outcome{mismatches == 0 && max_edges <= 1000,
                       fmt::format("{} mismatches, largest graph {} edges", mismatches,
                                   max_edges)};
    });

    // Criteria 6-8 and 10 share one run of the full matrix.
    const fs::path report_dir = "acceptance_report";
    AggregateReport trend;
    double trend_seconds = 0;
    std::string trend_error;
    try {
        const auto start = std::chrono::steady_clock::now();
        trend = run_matrix(trend_matrix(0));
        emit_reports(trend, report_dir);
        trend_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    } catch (const std::exception &e) {
        trend_error = e.what();
    }
    auto need_trend = [&] {
        if (!trend_error.empty()) {
            throw std::runtime_error("matrix failed: " + trend_error);
        }
    };

    check(6, "error non-increasing in fraction for all 8 variants", 1800.0, [&] {
        need_trend();
        Outcome out;
        out.pass = trend_seconds < 1800.0;
        std::vector<std::string> notes;
        for (std::size_t v = 0; v < trend.variants.size(); ++v) {
            std::vector<double> rises;
            for (std::size_t f = 1; f < trend.fractions.size(); ++f) {
                const double rise = trend.cell(v, f).mean_err_3 - trend.cell(v, f - 1).mean_err_3;
                if (!(rise <= 0)) {
                    rises.push_back(rise);
                }
            }
            const bool ok = rises.empty() || (rises.size() == 1 && rises[0] <= 0.005);
            out.pass = out.pass && ok;
            if (!rises.empty()) {
                std::string list;
                for (double r : rises) {
                    list += fmt::format("{}{:.2f}pp", list.empty() ? "" : " ", r * 100);
                }
                notes.push_back(fmt::format("{} rises {}", trend.variants[v].name(), list));
            }
        }
        out.detail = fmt::format("{} runs in {:.0f} s, failed runs {}{}{}", trend.runs.size(),
                                 trend_seconds, trend.failure_count(), notes.empty() ? "" : "; ",
                                 fmt::format("{}", fmt::join(notes, ", ")));
        return out;
    });

    check(7, "RNSE below RNS in err_3 and err_ed for fractions >= 0.4", 1.0, [&] {
        need_trend();
        Outcome out;
        std::size_t compared = 0;
        std::vector<std::string> bad;
        for (const std::string dist : {"", "-85-15", "-80-20", "-75-25"}) {
            const auto rns = variant_index(trend, "rns" + dist);
            const auto rnse = variant_index(trend, "rnse" + dist);
            for (std::size_t f = 0; f < trend.fractions.size(); ++f) {
                if (trend.fractions[f] < 0.4 - 1e-9) {
                    continue;
                }
                ++compared;
                const auto &a = trend.cell(rnse, f);
                const auto &b = trend.cell(rns, f);
                if (!(a.mean_err_3 < b.mean_err_3 && a.mean_err_ed < b.mean_err_ed)) {
                    bad.push_back(fmt::format("rnse{}@{}", dist, trend.fractions[f]));
                }
            }
        }
        out.pass = bad.empty();
        out.detail = fmt::format("{} of {} (distribution, fraction) pairs hold{}{}",
                                 compared - bad.size(), compared, bad.empty() ? "" : "; fails ",
                                 fmt::format("{}", fmt::join(bad, " ")));
        return out;
    });

    check(8, "vertices used 85-15 <= 80-20 <= non-selective at every fraction", 1.0, [&] {
        need_trend();
        Outcome out;
        std::vector<std::string> bad;
        std::vector<std::string> family_bad;
        for (std::size_t f = 0; f < trend.fractions.size(); ++f) {
            const double a = pooled_vertices(trend, {"rns-85-15", "rnse-85-15"}, f);
            const double b = pooled_vertices(trend, {"rns-80-20", "rnse-80-20"}, f);
            const double c = pooled_vertices(trend, {"rns", "rnse"}, f);
            if (!(a <= b && b <= c)) {
                bad.push_back(fmt::format("{}: {:.0f}/{:.0f}/{:.0f}", trend.fractions[f], a, b, c));
            }
            for (const std::string fam : {"rns", "rnse"}) {
                const double x = pooled_vertices(trend, {fam + "-85-15"}, f);
                const double y = pooled_vertices(trend, {fam + "-80-20"}, f);
                const double z = pooled_vertices(trend, {fam}, f);
                if (!(x <= y && y <= z)) {
                    family_bad.push_back(fmt::format("{}@{}", fam, trend.fractions[f]));
                }
            }
        }
        out.pass = bad.empty();
        out.detail = fmt::format("pooled RNS+RNSE: {} of {} fractions hold",
                                 trend.fractions.size() - bad.size(), trend.fractions.size());
        if (!bad.empty()) {
            out.detail += fmt::format("; violations (85-15/80-20/none) {}",
                                      fmt::join(bad, ", "));
        }
        out.detail += fmt::format("; per family violations: {}",
                                  family_bad.empty() ? std::string("none")
                                                     : fmt::format("{}", fmt::join(family_bad, " ")));
        return out;
    });

    check(9, "early termination on a degree-regular TG", 30.0, [] {
        const auto g = generate({.model = GraphModel::Regular, .node_target = 1000,
                                 .uniform_degree = 3});
        Outcome out;
        std::size_t direct = 0;
        for (const auto &v : all_variants()) {
            if (!v.distribution) {
                continue;
            }
            for (double f : default_fractions()) {
                ApiSimulator api(g);
                const auto r = sample(api, g, {.variant = v.variant, .distribution = v.distribution,
                                               .target_fraction = f, .rng_seed = 9});
                const bool ok = r.early_terminated && r.pool.empty() &&
                                r.tries_history.size() == 10 &&
                                std::none_of(r.tries_history.begin(), r.tries_history.end(),
                                             [](const SetAttempt &a) { return a.accepted; });
                out.pass = out.pass && ok;
                ++direct;
            }
        }
        ExperimentMatrix m;
        TgSource tg;
        tg.name = "regular";
        tg.generator = GeneratorSpec{.model = GraphModel::Regular, .node_target = 1000,
                                     .uniform_degree = 3};
        m.tgs.push_back(tg);
        m.variants.clear();
        for (const auto &v : all_variants()) {
            if (v.distribution) {
                m.variants.push_back(v);
            }
        }
        m.iterations = 2;
        const auto report = run_matrix(m);
        std::size_t recorded = 0;
        for (const auto &r : report.runs) {
            recorded += r.status == RunStatus::EmptySample && r.early_terminated;
        }
        out.pass = out.pass && recorded == report.runs.size();
        out.detail = fmt::format("{} direct runs with exactly 10 rejections, {} of {} harness runs "
                                 "recorded as early-terminated",
                                 direct, recorded, report.runs.size());
        return out;
    });

    check(10, "determinism of the trend matrix", 1800.0, [&] {
        need_trend();
        const fs::path again = "acceptance_report_rerun";
        emit_reports(run_matrix(trend_matrix(2)), again);
        const bool errors = slurp(report_dir / "errors.csv") == slurp(again / "errors.csv");
        const bool conservation =
            slurp(report_dir / "conservation.csv") == slurp(again / "conservation.csv");
        fs::remove_all(again);
        return Outcome{errors && conservation,
                       fmt::format("errors.csv {}, conservation.csv {} (rerun with 2 workers)",
                                   errors ? "identical" : "differs",
                                   conservation ? "identical" : "differs")};
    });

    check(11, "RNS induced edges vs hypergeometric expectation", 5.0, [] {
        const auto g = generate({.model = GraphModel::UniformRandom, .node_target = 1000,
                                 .edge_probability = 0.01, .rng_seed = 11});
        const double n = 1000, k = 500, e = static_cast<double>(g.edge_count());
        const double expected = e * k * (k - 1) / (n * (n - 1));
        double sum = 0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            ApiSimulator api(g);
            sum += static_cast<double>(
                sample(api, g, {.target_fraction = 0.5, .rng_seed = seed}).graph.edge_count());
        }
        const double mean = sum / 10;
        const double dev = std::abs(mean - expected) / expected;
        return Outcome{dev <= 0.1, fmt::format("mean {:.1f} vs expected {:.1f}, deviation {:.2f}%",
                                               mean, expected, dev * 100)};
    });

    std::cout << fmt::format("{} of 11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
