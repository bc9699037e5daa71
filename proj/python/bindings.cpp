#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "osnsample/api_sim.hpp"
#include "osnsample/edge_list.hpp"
#include "osnsample/errors.hpp"
#include "osnsample/generators.hpp"
#include "osnsample/graph.hpp"
#include "osnsample/metrics.hpp"
#include "osnsample/sampler.hpp"

namespace py = pybind11;
using namespace osnsample;

namespace {

std::vector<Edge> edges_from(const std::vector<std::pair<std::uint64_t, std::uint64_t>> &pairs) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto &[u, v] : pairs) {
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    return edges;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Random node sampling of directed graphs under a simulated API budget";

    static py::exception<Error> error(m, "Error");
    py::register_exception<ParameterError>(m, "ParameterError", error.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
    py::register_exception<IoError>(m, "IoError", error.ptr());
    py::register_exception<BudgetError>(m, "BudgetError", error.ptr());

    py::class_<DirectedGraph>(m, "DirectedGraph")
        .def(py::init([](std::size_t n, const std::vector<std::pair<std::uint64_t, std::uint64_t>> &e) {
                 return DirectedGraph(n, edges_from(e));
             }),
             py::arg("node_count"), py::arg("edges"))
        .def_property_readonly("node_count", &DirectedGraph::node_count)
        .def_property_readonly("edge_count", &DirectedGraph::edge_count)
        .def("out_degree", &DirectedGraph::out_degree)
        .def("in_degree", &DirectedGraph::in_degree)
        .def("has_edge", &DirectedGraph::has_edge)
        .def("labels", &DirectedGraph::labels)
        .def("edges", &DirectedGraph::edges)
        .def("labelled_edges", &DirectedGraph::labelled_edges)
        .def("__len__", &DirectedGraph::node_count);

    py::enum_<GraphModel>(m, "GraphModel")
        .value("PreferentialAttachment", GraphModel::PreferentialAttachment)
        .value("UniformRandom", GraphModel::UniformRandom)
        .value("Regular", GraphModel::Regular);

    py::class_<GeneratorSpec>(m, "GeneratorSpec")
        .def(py::init([](const std::string &model, std::size_t nodes, std::size_t edges_per_node,
                         double attachment_offset, double source_preference,
                         double edge_probability, std::size_t degree, std::uint64_t seed) {
                 return GeneratorSpec{parse_graph_model(model), nodes, edges_per_node,
                                      attachment_offset, source_preference, edge_probability,
                                      degree, seed};
             }),
             py::arg("model") = "preferential-attachment", py::arg("nodes") = 1000,
             py::arg("edges_per_node") = 5, py::arg("attachment_offset") = 1.0,
             py::arg("source_preference") = 0.0,
             py::arg("edge_probability") = 0.0, py::arg("degree") = 2, py::arg("seed") = 0)
        .def_readwrite("node_target", &GeneratorSpec::node_target)
        .def_readwrite("rng_seed", &GeneratorSpec::rng_seed);

    m.def("generate", &generate, py::arg("spec"));
    m.def("load_edge_list", &load_edge_list, py::arg("path"));
    m.def("save_edge_list", &save_edge_list, py::arg("graph"), py::arg("path"));

    py::class_<PropertyReport>(m, "PropertyReport")
        .def_readonly("vertices", &PropertyReport::vertices)
        .def_readonly("edges", &PropertyReport::edges)
        .def_readonly("mean_degree", &PropertyReport::mean_degree)
        .def_readonly("clustering_coefficient", &PropertyReport::clustering_coefficient)
        .def_readonly("assortativity", &PropertyReport::assortativity)
        .def_readonly("components", &PropertyReport::components);

    py::class_<ErrorReport>(m, "ErrorReport")
        .def_readonly("mean_degree", &ErrorReport::mean_degree)
        .def_readonly("clustering", &ErrorReport::clustering)
        .def_readonly("assortativity", &ErrorReport::assortativity)
        .def_readonly("edges", &ErrorReport::edges)
        .def_readonly("aggregate_3", &ErrorReport::aggregate_3)
        .def_readonly("aggregate_ed", &ErrorReport::aggregate_ed);

    m.def("compute_properties", &compute_properties, py::arg("graph"));
    m.def("relative_error", &relative_error, py::arg("sampled"), py::arg("truth"));

    py::class_<Distribution>(m, "Distribution")
        .def(py::init<unsigned, unsigned>(), py::arg("top_percent"), py::arg("share_percent"))
        .def_readwrite("top_percent", &Distribution::top_percent)
        .def_readwrite("share_percent", &Distribution::share_percent);

    m.def(
        "pareto_check",
        [](const std::vector<std::uint64_t> &degrees, const Distribution &d) {
            return pareto_check(degrees, d);
        },
        py::arg("degrees"), py::arg("distribution"));

    py::class_<RequestLedger>(m, "RequestLedger")
        .def_readonly("total_requests", &RequestLedger::total_requests)
        .def_readonly("degree_requests", &RequestLedger::degree_requests)
        .def_readonly("neighbor_page_requests", &RequestLedger::neighbor_page_requests)
        .def_readonly("simulated_clock_hours", &RequestLedger::simulated_clock_hours);

    py::class_<ApiConfig>(m, "ApiConfig")
        .def(py::init([](std::size_t page_size, std::optional<std::uint64_t> hourly_limit,
                         std::optional<std::uint64_t> request_budget) {
                 return ApiConfig{page_size, hourly_limit, request_budget};
             }),
             py::arg("page_size") = 5000, py::arg("hourly_limit") = 350,
             py::arg("request_budget") = py::none());

    py::class_<ApiSimulator>(m, "ApiSimulator")
        .def(py::init<const DirectedGraph &, ApiConfig>(), py::arg("truth"),
             py::arg("config") = ApiConfig{}, py::keep_alive<1, 2>())
        .def("query_degree",
             [](ApiSimulator &api, NodeId u) {
                 auto d = api.query_degree(u);
                 return std::pair{d.in_degree, d.out_degree};
             })
        .def("fetch_out", [](ApiSimulator &api, NodeId u) {
            return api.fetch_neighbors(u, Direction::Out);
        })
        .def("fetch_in", [](ApiSimulator &api, NodeId u) {
            return api.fetch_neighbors(u, Direction::In);
        })
        .def("ledger", &ApiSimulator::ledger_snapshot);

    py::class_<SampleResult>(m, "SampleResult")
        .def_readonly("pool", &SampleResult::pool)
        .def_readonly("graph", &SampleResult::graph)
        .def_readonly("vertices_used", &SampleResult::vertices_used)
        .def_readonly("ledger", &SampleResult::ledger)
        .def_readonly("early_terminated", &SampleResult::early_terminated)
        .def_readonly("wall_time_seconds", &SampleResult::wall_time_seconds);

    m.def(
        "sample",
        [](ApiSimulator &api, const DirectedGraph &tg, const std::string &variant, double fraction,
           std::uint64_t seed, double set_fraction, std::size_t max_tries) {
            auto [v, d] = parse_variant_name(variant);
            SamplerConfig config{v, d, fraction, set_fraction, max_tries, seed};
            return sample(api, tg, config);
        },
        py::arg("api"), py::arg("tg"), py::arg("variant") = "rns", py::arg("fraction") = 0.1,
        py::arg("seed") = 0, py::arg("set_fraction") = 0.02, py::arg("max_tries") = 10);
}
