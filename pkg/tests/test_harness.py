import json

import pytest

from grundy import harness as hz
from grundy.graph import (
    add_leaf,
    cartesian_product,
    complete,
    cycle,
    edgeless,
    enumerate_labeled_graphs,
    path,
    random_forest,
    remove_edge,
    star,
)


@pytest.fixture
def gamma():
    return hz.Gamma()


def test_gamma_cache(gamma):
    assert gamma(cycle(5)) == 4
    assert gamma(cycle(5)) == 4
    assert len(gamma.cache) == 1
    assert gamma(edgeless(0)) == 0


def test_gamma_budget():
    g = hz.Gamma(node_budget=2)
    with pytest.raises(hz.BudgetExhausted):
        g(cartesian_product(complete(4), complete(2)))


def test_delta_bound(gamma):
    r = hz.check_delta_bound(complete(5), gamma)
    assert r.verdict == hz.PASS and r.observed["bound"] == 2
    assert hz.check_delta_bound(edgeless(3), gamma).verdict == hz.PASS


def test_edge_removal_k4_box_k2(gamma):
    g = cartesian_product(complete(4), complete(2))
    r = hz.check_edge_removal(g, gamma)
    assert r.verdict == hz.PASS
    assert r.observed["gamma"] == 5
    assert r.observed["deltas"] == [1]


def test_edge_removal_double_cycle_bridge(gamma):
    from grundy.constructions import double_cycle_bridge

    r = hz.check_edge_removal(double_cycle_bridge(4).graph, gamma)
    assert r.verdict == hz.PASS and -1 in r.observed["deltas"]


def test_vertex_removal(gamma):
    g = add_leaf(complete(4), 0)
    r = hz.check_vertex_removal(g, gamma)
    assert r.verdict == hz.PASS
    assert r.observed["deltas"] == [-2, -1, 0]


def test_k_edge_deltas(gamma):
    r = hz.check_k_edge_deltas(cycle(6), 2, gamma, seed=1)
    assert r.verdict == hz.PASS
    assert all(-2 <= d <= 4 for d in r.observed["removal_deltas"])
    assert isinstance(r.observed["addition_literal_holds"], bool)


def test_complete_characterization(gamma):
    assert hz.check_complete_characterization(complete(4), gamma).observed["witness"] is not None
    r = hz.check_complete_characterization(remove_edge(complete(4), 0, 1), gamma)
    assert r.verdict == hz.PASS and r.observed["gamma"] == 3
    with pytest.raises(ValueError):
        hz.check_complete_characterization(path(2), gamma)
    with pytest.raises(ValueError):
        hz.check_complete_characterization(edgeless(3), gamma)


def test_twin_triples():
    assert list(hz.twin_triples(complete(3))) == [(0, 1, 2)]
    assert list(hz.twin_triples(cycle(4))) == []
    assert list(hz.twin_triples(add_leaf(complete(3), 0))) == []


def test_triple_twin(gamma):
    r = hz.check_triple_twin(complete(4), gamma)
    assert r.verdict == hz.PASS and r.observed["triple"] == [0, 1, 2]
    assert hz.check_triple_twin(path(3), gamma).observed["triple"] is None


def test_full_implies_leaf(gamma):
    assert hz.check_full_implies_leaf(star(3), gamma).verdict == hz.PASS
    assert hz.check_full_implies_leaf(cycle(5), gamma).verdict == hz.PASS


def test_induced_monotone(gamma):
    r = hz.check_induced_monotone(cycle(6), gamma, subsets=[[0, 1, 2], [0, 2, 4]])
    assert r.observed["induced_gammas"] == [3, 3]
    assert r.verdict == hz.PASS


def test_forest_full(gamma):
    assert hz.check_forest_full(g=random_forest(11, 4), gamma=gamma).verdict == hz.PASS
    assert hz.check_forest_full(seed=9).verdict == hz.PASS
    with pytest.raises(ValueError):
        hz.check_forest_full(g=cycle(3))


def test_inconclusive_not_pass():
    tiny = hz.Gamma(node_budget=1)
    r = hz.check_delta_bound(cartesian_product(complete(4), complete(2)), tiny)
    assert r.verdict == hz.INCONCLUSIVE
    assert "lower_bound" in r.observed


def test_report_round_trip(gamma):
    r = hz.check_vertex_removal(cycle(4), gamma)
    d = json.loads(json.dumps(r.as_dict()))
    assert hz.TheoremReport(**d).theorem_id == "vertex-removal"
    assert d["graph_id"] == "Cl"


def test_exhaustive_n4_clean():
    reports = hz.exhaustive_sweep(4)
    rows = hz.summarize(reports)
    assert rows and all(r["fails"] == 0 and r["inconclusive"] == 0 for r in rows)
    assert {r["theorem_id"] for r in rows} == set(hz.ALL_CHECKS)


def test_sweep_deterministic_and_parallel_matches():
    graphs = list(enumerate_labeled_graphs(4))[:40]
    cfg = hz.SweepConfig(checks=hz.ALL_CHECKS, seed=3)
    a = [r.as_dict() for r in hz.run_checks(graphs, cfg)]
    b = [r.as_dict() for r in hz.run_checks(graphs, cfg)]
    par = hz.SweepConfig(checks=hz.ALL_CHECKS, seed=3, workers=2)
    c = [r.as_dict() for r in hz.run_checks(graphs, par)]
    strip = lambda rs: [{k: v for k, v in r.items() if k != "elapsed"} for r in rs]
    assert strip(a) == strip(b) == strip(c)


def test_random_corpus_seeded():
    a = [g.rows for g in hz.random_corpus(seed=1, per_cell=2)]
    assert a == [g.rows for g in hz.random_corpus(seed=1, per_cell=2)]
    assert len(a) == 2 * len(hz.RANDOM_NS) * len(hz.RANDOM_PS)


def test_worked_examples_named():
    names = dict(hz.worked_examples())
    assert names["figure1"].n == 4
    assert names["K4xK2"].m == 16


def test_search_vertex_deltas():
    st = hz.extremal_search("vertex-deltas", seed=2, steps=300, n_range=(4, 6), restarts=5)
    assert st.realized_deltas <= hz.VERTEX_DELTAS
    d = st.as_dict()
    assert d["steps"] <= 300 and d["best_graph6"]


def test_search_seeded_with_vertex_example():
    st = hz.extremal_search("vertex-deltas", seed=0, steps=1, seed_graph=add_leaf(complete(4), 0))
    assert st.complete and st.best_deltas == {-2, -1, 0}


def test_search_deterministic():
    a = hz.extremal_search("edge-deltas", seed=5, steps=60, restarts=3, stop_on_full=False).as_dict()
    b = hz.extremal_search("edge-deltas", seed=5, steps=60, restarts=3, stop_on_full=False).as_dict()
    assert a == b and a["steps"] == 60


def test_search_bad_args():
    with pytest.raises(ValueError):
        hz.extremal_search("edges")
    with pytest.raises(ValueError):
        hz.extremal_search(n_range=(5, 4))
