import pytest

import osnsample as osn


def test_regular_graph():
    g = osn.generate(osn.GeneratorSpec(model="regular", nodes=10, degree=2))
    assert g.node_count == 10
    assert g.edge_count == 20
    assert g.has_edge(0, 1)


def test_properties_of_cycle():
    g = osn.DirectedGraph(3, [(0, 1), (1, 2), (2, 0)])
    p = osn.compute_properties(g)
    assert p.edges == 3
    assert p.mean_degree == pytest.approx(2.0)
    assert p.clustering_coefficient == pytest.approx(1.0)
    assert p.assortativity is None
    assert p.components == 1


def test_identity_sample_has_zero_error():
    g = osn.generate(osn.GeneratorSpec(nodes=500, edges_per_node=3, seed=4))
    api = osn.ApiSimulator(g)
    r = osn.sample(api, g, variant="rnse", fraction=1.0, seed=1)
    err = osn.relative_error(osn.compute_properties(r.graph), osn.compute_properties(g))
    assert err.aggregate_ed == 0.0
    assert r.vertices_used == 500
    assert api.ledger().total_requests > 0


def test_sample_is_deterministic():
    g = osn.generate(osn.GeneratorSpec(nodes=2000, edges_per_node=4, seed=2))
    a = osn.sample(osn.ApiSimulator(g), g, variant="rns-80-20", fraction=0.2, seed=9)
    b = osn.sample(osn.ApiSimulator(g), g, variant="rns-80-20", fraction=0.2, seed=9)
    assert list(a.pool) == list(b.pool)
    assert a.graph.labelled_edges() == b.graph.labelled_edges()


def test_pareto_check():
    assert osn.pareto_check([100, 1, 1, 1, 1, 1, 1, 1, 1, 1], osn.Distribution(20, 80))
    assert not osn.pareto_check([5] * 10, osn.Distribution(20, 80))


def test_errors_map_to_exceptions(tmp_path):
    with pytest.raises(osn.ParameterError):
        osn.generate(osn.GeneratorSpec(nodes=1))
    with pytest.raises(osn.IoError):
        osn.load_edge_list(str(tmp_path / "missing.txt"))
    g = osn.DirectedGraph(2, [(0, 1)])
    api = osn.ApiSimulator(g, osn.ApiConfig(request_budget=1))
    api.query_degree(0)
    with pytest.raises(osn.BudgetError):
        api.query_degree(1)
    assert issubclass(osn.BudgetError, osn.Error)
