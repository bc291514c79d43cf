import random

import pytest

from grundy import constructions as cons
from grundy.engine import L, TOTAL, validate_sequence
from grundy.graph import (
    add_leaf,
    complete,
    edgeless,
    cycle,
    disjoint_union,
    graph_from_edges,
    path,
    random_graph,
    random_tree,
    remove_edge,
    star,
)
from grundy.solver import brute_oracle, solve


def assert_matches_solver(out):
    assert len(validate_sequence(out.graph, L, out.witness)) == out.expected_gamma
    assert solve(out.graph, L).value == out.expected_gamma


def test_cycle_order():
    assert cons.cycle_order(3) == [0, 2]
    assert cons.cycle_order(6) == [0, 2, 4, 5, 3]
    with pytest.raises(cons.ConstructionError):
        cons.cycle_order(2)


@pytest.mark.parametrize("n", range(3, 13))
def test_cycle_witness(n):
    out = cons.cycle_witness(n)
    assert out.expected_gamma == n - 1
    assert_matches_solver(out)


@pytest.mark.parametrize("n", range(3, 11))
def test_cycle_with_leaf(n):
    out = cons.cycle_with_leaf(n)
    assert out.graph.n == n + 1 and out.expected_gamma == n + 1
    assert_matches_solver(out)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_clique_with_leaves(k):
    out = cons.clique_with_leaves(k)
    assert out.expected_gamma == 2 * k - 1
    assert_matches_solver(out)


def test_clique_with_leaves_degenerate():
    with pytest.warns(UserWarning):
        out = cons.clique_with_leaves(2)
    assert out.graph.is_forest() and out.graph.n == 3 and out.notes
    with pytest.raises(cons.ConstructionError):
        cons.clique_with_leaves(1)


def test_saturate_examples():
    k3 = complete(3)
    out = cons.saturate(k3, solve(k3).witness)
    assert out.graph.n == 4 and out.expected_gamma == 4
    c5 = cycle(5)
    out = cons.saturate(c5, solve(c5).witness)
    assert out.graph.n == 6 and out.expected_gamma == 6
    assert out.graph.min_degree() == 1
    assert_matches_solver(out)


def test_saturate_rejects():
    with pytest.raises(cons.ConstructionError, match="maximum"):
        cons.saturate(complete(3), [0])
    with pytest.raises(cons.ConstructionError, match="not an L-sequence"):
        cons.saturate(complete(3), [0, 1, 2])
    with pytest.raises(cons.ConstructionError, match="covers every"):
        cons.saturate(edgeless(2), [0, 1])


def test_saturate_random():
    rng = random.Random(5)
    for _ in range(30):
        g = random_graph(rng.randint(3, 8), rng.uniform(0.4, 0.9), seed=rng.randrange(1 << 30))
        r = solve(g)
        if r.value == g.n:
            continue
        out = cons.saturate(g, r.witness)
        assert out.expected_gamma == out.graph.n
        assert brute_oracle(out.graph, L) == out.graph.n if out.graph.n <= 9 else True


@pytest.mark.parametrize(
    "g, size",
    [(complete(4), 8), (path(4), 4), (star(3), 5)],
)
def test_leaf_augment(g, size):
    out = cons.leaf_augment(g)
    assert out.graph.n == size == out.expected_gamma
    assert_matches_solver(out)


def test_leaf_augment_rejects_bare_cycles():
    with pytest.raises(cons.ConstructionError, match="cycle"):
        cons.leaf_augment(cycle(5))
    with pytest.raises(cons.ConstructionError):
        cons.leaf_augment(disjoint_union(complete(4), cycle(4)))


def _has_cycle_component(g):
    return any(all(g.degree(v) == 2 for v in range(g.n) if c >> v & 1) for c in g.components())


def test_leaf_augment_random():
    rng = random.Random(13)
    for _ in range(60):
        g = random_graph(rng.randint(3, 9), rng.uniform(0.2, 0.8), seed=rng.randrange(1 << 30))
        if _has_cycle_component(g):
            continue
        out = cons.leaf_augment(g)
        assert validate_sequence(out.graph, L, out.witness)
        if out.graph.n <= 14:
            assert solve(out.graph).value == out.graph.n


def test_proof_order_on_trees():
    for seed in range(25):
        t = random_tree(1 + seed % 12, seed)
        assert len(cons.proof_order_witness(t)) == t.n


def test_proof_order_strict_rejects_bare_cycle():
    with pytest.raises(cons.ConstructionError, match="hypothesis"):
        cons.proof_order_witness(complete(4))
    g = disjoint_union(cycle(4), path(2))
    with pytest.raises(cons.ConstructionError):
        cons.proof_order_witness(g)


def test_peel_order_stuck_on_cycle():
    assert cons.peel_order(cycle(5)) is None
    assert sorted(cons.peel_order(star(4))) == list(range(5))


@pytest.mark.parametrize("n", range(3, 7))
def test_double_cycle_bridge(n):
    out = cons.double_cycle_bridge(n)
    assert out.graph.n == 2 * n and out.expected_gamma == 2 * n - 1
    assert_matches_solver(out)
    u, v = cons.double_cycle_bridge_edge(n)
    assert solve(remove_edge(out.graph, u, v)).value == 2 * n - 2


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_t_structure(k):
    g = cons.t_structure_instance(k)
    w = cons.t_structure_witness(k)
    assert len(validate_sequence(g, TOTAL, w)) == 2 * k
    assert solve(g, TOTAL).value == 2 * k


def test_output_as_dict():
    d = cons.cycle_with_leaf(3).as_dict(one_indexed=True)
    assert d["family"] == "cycle-with-leaf"
    assert d["witness"] == [4, 1, 3, 2]
    assert d["expected_gamma"] == 4


def test_bad_witness_is_caught():
    with pytest.raises(cons.ConstructionError, match="rejected"):
        cons._checked(complete(3), [0, 1, 2], 3, "x")
    with pytest.raises(cons.ConstructionError, match="length"):
        cons._checked(complete(3), [0, 1], 3, "x")


def test_two_stars_joined_by_chain():
    # centers 0 and 4, chain 1-2-3 between them, two leaves on each center
    g = graph_from_edges(9, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (0, 6), (4, 7), (4, 8)])
    out = cons.leaf_augment(g)
    assert out.graph.n == 11 and not out.notes
    assert_matches_solver(out)
    w = cons.proof_order_witness(out.graph)
    assert w[:3] in ([1, 3, 2], [1, 2, 3])
