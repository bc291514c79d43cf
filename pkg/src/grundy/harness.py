"""Machine checks of L-Grundy bounds and characterizations.

Each ``check_*`` function evaluates one statement on one graph with the exact
solver and returns a :class:`TheoremReport`.  A report whose solve ran out of
node budget is ``inconclusive``, never ``pass``.

All checks solve with the minimum-degree stopping rule switched off so that
no check relies on a bound it is meant to test.
"""

from __future__ import annotations

import itertools
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from . import constructions as cons
from .engine import L
from .graph import (
    Graph,
    add_edge,
    add_leaf,
    cartesian_product,
    complete,
    cycle,
    enumerate_labeled_graphs,
    graph_from_edges,
    parse_graph6,
    path,
    random_forest,
    random_graph,
    random_tree,
    remove_edge,
    remove_vertex,
    star,
    to_graph6,
)
from .solver import BudgetExhausted, SolveOptions, solve

log = logging.getLogger(__name__)

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

EDGE_DELTAS = frozenset({-1, 0, 1, 2})
VERTEX_DELTAS = frozenset({-2, -1, 0})

DEFAULT_SEED = 42
RANDOM_PS = (0.2, 0.5, 0.8)
RANDOM_NS = tuple(range(7, 13))


@dataclass
class TheoremReport:
    theorem_id: str
    graph_id: str
    expected: str
    observed: dict
    verdict: str
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        d = asdict(self)
        d["elapsed"] = round(self.elapsed, 6)
        return d


class TheoremViolation(AssertionError):
    """A proved statement failed: the implementation is wrong somewhere."""

    def __init__(self, report: TheoremReport):
        self.report = report
        super().__init__(f"{report.theorem_id} violated on {report.graph_id}: {report.observed}")


class Gamma:
    """Exact L-Grundy number with a per-instance cache keyed by labeled graph."""

    def __init__(self, node_budget: int | None = None, memo_cap: int = 24, cache_limit: int = 500_000):
        self.opts = SolveOptions(node_budget=node_budget, memo_cap=memo_cap, use_delta_bound_pruning=False)
        self.cache: dict[tuple, int] = {}
        self.cache_limit = cache_limit

    def __call__(self, g: Graph) -> int:
        if g.n == 0:
            return 0
        key = (g.n, g.rows)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        r = solve(g, L, self.opts)
        if not r.exact:
            raise BudgetExhausted(r)
        if len(self.cache) >= self.cache_limit:
            self.cache.clear()
        self.cache[key] = r.value
        return r.value

    def witness(self, g: Graph) -> list[int]:
        r = solve(g, L, self.opts)
        if not r.exact:
            raise BudgetExhausted(r)
        return r.witness


def _run(theorem_id: str, g: Graph, expected: str, body: Callable[[], tuple[bool, dict]]) -> TheoremReport:
    t0 = time.perf_counter()
    try:
        ok, observed = body()
        verdict = PASS if ok else FAIL
    except BudgetExhausted as exc:
        observed = {"lower_bound": exc.result.value, "reason": "node budget exhausted"}
        verdict = INCONCLUSIVE
    return TheoremReport(theorem_id, to_graph6(g), expected, observed, verdict, time.perf_counter() - t0)


# -- individual statements -------------------------------------------------


def check_delta_bound(g: Graph, gamma: Gamma | None = None) -> TheoremReport:
    gamma = gamma or Gamma()

    def body():
        d = g.min_degree()
        v = gamma(g)
        return d == 0 or v <= g.n - d + 1, {"gamma": v, "n": g.n, "min_degree": d, "bound": g.n - d + 1}

    return _run("delta-bound", g, "min_degree == 0 or gamma <= n - min_degree + 1", body)


def _edge_deltas(g: Graph, gamma: Gamma) -> dict[tuple[int, int], int]:
    base = gamma(g)
    return {e: gamma(remove_edge(g, *e)) - base for e in g.edges()}


def _vertex_deltas(g: Graph, gamma: Gamma) -> dict[int, int]:
    base = gamma(g)
    return {u: gamma(remove_vertex(g, u)) - base for u in range(g.n)}


def check_edge_removal(g: Graph, gamma: Gamma | None = None) -> TheoremReport:
    gamma = gamma or Gamma()

    def body():
        deltas = _edge_deltas(g, gamma)
        bad = {f"{u}-{v}": d for (u, v), d in deltas.items() if d not in EDGE_DELTAS}
        obs = {"gamma": gamma(g), "deltas": sorted(set(deltas.values()))}
        if bad:
            obs["violations"] = bad
        return not bad, obs

    return _run("edge-removal", g, "-1 <= gamma(G-e) - gamma(G) <= 2 for every edge e", body)


def check_vertex_removal(g: Graph, gamma: Gamma | None = None) -> TheoremReport:
    gamma = gamma or Gamma()

    def body():
        deltas = _vertex_deltas(g, gamma)
        bad = {str(u): d for u, d in deltas.items() if d not in VERTEX_DELTAS}
        obs = {"gamma": gamma(g), "deltas": sorted(set(deltas.values()))}
        if bad:
            obs["violations"] = bad
        return not bad, obs

    return _run("vertex-removal", g, "-2 <= gamma(G-u) - gamma(G) <= 0 for every vertex u", body)


def check_k_edge_deltas(
    g: Graph, k: int, gamma: Gamma | None = None, seed: int = DEFAULT_SEED, samples: int = 5
) -> TheoremReport:
    """Remove ``k`` edges at once; the change lies in ``[-k, 2k]``.

    Also records, for information only, whether *adding* ``k`` edges stays in
    the same window (the statement as literally worded).
    """
    gamma = gamma or Gamma()
    rng = random.Random(seed)

    def pick(pool: list, size: int) -> list[tuple]:
        if len(pool) < size:
            return []
        combos = list(itertools.combinations(pool, size)) if len(pool) <= 12 else None
        if combos is not None and len(combos) <= samples:
            return combos
        return [tuple(rng.sample(pool, size)) for _ in range(samples)]

    def body():
        base = gamma(g)
        removal, bad = [], []
        for es in pick(g.edges(), k):
            h = g
            for e in es:
                h = remove_edge(h, *e)
            d = gamma(h) - base
            removal.append(d)
            if not -k <= d <= 2 * k:
                bad.append([list(e) for e in es])
        non_edges = [(u, v) for u, v in itertools.combinations(range(g.n), 2) if not g.has_edge(u, v)]
        addition = []
        for es in pick(non_edges, k):
            h = g
            for e in es:
                h = add_edge(h, *e)
            addition.append(gamma(h) - base)
        obs = {
            "gamma": base,
            "k": k,
            "removal_deltas": sorted(set(removal)),
            "addition_deltas": sorted(set(addition)),
            "addition_literal_holds": all(-k <= d <= 2 * k for d in addition),
        }
        if bad:
            obs["violations"] = bad
        return not bad, obs

    return _run("k-edge-removal", g, f"-{k} <= gamma(G - k edges) - gamma(G) <= {2 * k}", body)


def check_complete_characterization(g: Graph, gamma: Gamma | None = None) -> TheoremReport:
    """Connected, n >= 3: gamma == 2 iff complete, and a length-2 witness is an edge."""
    if g.n < 3 or not g.is_connected():
        raise ValueError("complete-graph characterization needs a connected graph on >= 3 vertices")
    gamma = gamma or Gamma()

    def body():
        v = gamma(g)
        comp = g.is_complete()
        obs = {"gamma": v, "complete": comp}
        ok = (v == 2) == comp
        if v == 2:
            w = gamma.witness(g)
            obs["witness"] = w
            ok = ok and g.has_edge(*w)
        return ok, obs

    return _run("complete-iff", g, "gamma == 2 <=> complete; witness pair adjacent", body)


def twin_triples(g: Graph) -> Iterator[tuple[int, int, int]]:
    """Pairwise adjacent triples with equal closed neighborhoods."""
    closed = [g.rows[v] | 1 << v for v in range(g.n)]
    for a, b, c in itertools.combinations(range(g.n), 3):
        if closed[a] == closed[b] == closed[c] and g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c):
            yield a, b, c


def check_triple_twin(g: Graph, gamma: Gamma | None = None) -> TheoremReport:
    gamma = gamma or Gamma()

    def body():
        triple = next(twin_triples(g), None)
        if triple is None:
            return True, {"triple": None}
        v = gamma(g)
        return v != g.n, {"triple": list(triple), "gamma": v, "n": g.n}

    return _run("triple-twin", g, "adjacent closed-twin triple => gamma != n", body)


def check_full_implies_leaf(g: Graph, gamma: Gamma | None = None) -> TheoremReport:
    gamma = gamma or Gamma()

    def body():
        v = gamma(g)
        d = g.min_degree()
        return v != g.n or d <= 1, {"gamma": v, "n": g.n, "min_degree": d}

    return _run("full-implies-leaf", g, "gamma == n => min_degree <= 1", body)


def check_induced_monotone(
    g: Graph, gamma: Gamma | None = None, seed: int = DEFAULT_SEED, samples: int = 3,
    subsets: Sequence[Sequence[int]] | None = None,
) -> TheoremReport:
    gamma = gamma or Gamma()
    rng = random.Random(seed)
    if subsets is None:
        subsets = []
        for _ in range(samples):
            size = rng.randint(1, g.n)
            subsets.append(sorted(rng.sample(range(g.n), size)))

    def body():
        v = gamma(g)
        seen = []
        for keep in subsets:
            seen.append(gamma(g.induced(list(keep))))
        bad = [list(s) for s, h in zip(subsets, seen) if h > v]
        obs = {"gamma": v, "induced_gammas": seen}
        if bad:
            obs["violations"] = bad
        return not bad, obs

    return _run("induced-monotone", g, "gamma(H) <= gamma(G) for induced H", body)


def check_forest_full(seed: int = DEFAULT_SEED, g: Graph | None = None, gamma: Gamma | None = None) -> TheoremReport:
    """A random forest (or the given one) has gamma == n."""
    gamma = gamma or Gamma()
    if g is None:
        rng = random.Random(seed)
        n = rng.randint(1, 12)
        g = random_tree(n, seed) if rng.random() < 0.5 else random_forest(n, seed)
    if not g.is_forest():
        raise ValueError("check_forest_full needs a forest")

    def body():
        v = gamma(g)
        return v == g.n, {"gamma": v, "n": g.n}

    return _run("forest-full", g, "gamma == n on forests", body)


# -- suites -------------------------------------------------------------------

BOUND_CHECKS = ("delta-bound", "full-implies-leaf", "triple-twin", "complete-iff")
REMOVAL_CHECKS = ("edge-removal", "vertex-removal")
ALL_CHECKS = BOUND_CHECKS + REMOVAL_CHECKS + ("k-edge-removal", "induced-monotone", "forest-full")


def applicable_checks(g: Graph, names: Iterable[str], gamma: Gamma, seed: int) -> list[TheoremReport]:
    out = []
    for name in names:
        if name == "delta-bound" and g.n:
            out.append(check_delta_bound(g, gamma))
        elif name == "full-implies-leaf" and g.n:
            out.append(check_full_implies_leaf(g, gamma))
        elif name == "triple-twin":
            out.append(check_triple_twin(g, gamma))
        elif name == "complete-iff" and g.n >= 3 and g.is_connected():
            out.append(check_complete_characterization(g, gamma))
        elif name == "edge-removal" and g.m:
            out.append(check_edge_removal(g, gamma))
        elif name == "vertex-removal" and g.n:
            out.append(check_vertex_removal(g, gamma))
        elif name == "k-edge-removal" and g.m >= 2:
            out.append(check_k_edge_deltas(g, 2, gamma, seed=seed))
        elif name == "induced-monotone" and g.n:
            out.append(check_induced_monotone(g, gamma, seed=seed))
        elif name == "forest-full" and g.n and g.is_forest():
            out.append(check_forest_full(g=g, gamma=gamma))
    return out


@dataclass
class SweepConfig:
    checks: tuple[str, ...] = ALL_CHECKS
    node_budget: int | None = None
    seed: int = DEFAULT_SEED
    workers: int = 1
    stop_on_fail: bool = True


def _check_chunk(args) -> list[dict]:
    lines, cfg = args
    gamma = Gamma(cfg.node_budget)
    out = []
    for i, line in enumerate(lines):
        g = parse_graph6(line)
        for r in applicable_checks(g, cfg.checks, gamma, cfg.seed + i):
            out.append(r.as_dict())
    return out


def run_checks(graphs: Iterable[Graph], cfg: SweepConfig | None = None) -> Iterator[TheoremReport]:
    """Every applicable check on every graph, in input order.

    With ``cfg.workers > 1`` graphs are checked in chunks on a process pool
    and merged back in input order.  With ``stop_on_fail`` the stream ends
    right after the first failing report.
    """
    cfg = cfg or SweepConfig()
    if cfg.workers <= 1:
        gamma = Gamma(cfg.node_budget)
        for i, g in enumerate(graphs):
            for r in applicable_checks(g, cfg.checks, gamma, cfg.seed + i):
                yield r
                if r.verdict == FAIL and cfg.stop_on_fail:
                    return
        return
    lines = [to_graph6(g) for g in graphs]
    size = max(1, len(lines) // (cfg.workers * 8))
    chunks = [(lines[i:i + size], _offset(cfg, i)) for i in range(0, len(lines), size)]
    with ProcessPoolExecutor(cfg.workers) as pool:
        for batch in pool.map(_check_chunk, chunks):
            for d in batch:
                r = TheoremReport(**d)
                yield r
                if r.verdict == FAIL and cfg.stop_on_fail:
                    return


def _offset(cfg: SweepConfig, i: int) -> SweepConfig:
    # keep per-graph seeds identical to the sequential path
    return SweepConfig(cfg.checks, cfg.node_budget, cfg.seed + i, 1, cfg.stop_on_fail)


def exhaustive_sweep(n: int, cfg: SweepConfig | None = None) -> list[TheoremReport]:
    return list(run_checks(enumerate_labeled_graphs(n), cfg))


def random_corpus(seed: int = DEFAULT_SEED, per_cell: int = 100, ns=RANDOM_NS, ps=RANDOM_PS) -> Iterator[Graph]:
    rng = random.Random(seed)
    for n in ns:
        for p in ps:
            for _ in range(per_cell):
                yield random_graph(n, p, rng.randrange(2**32))


def worked_examples() -> list[tuple[str, Graph]]:
    """Named instances from the worked examples."""
    out = [
        ("K4xK2", cartesian_product(complete(4), complete(2))),
        ("K4-e", remove_edge(complete(4), 0, 1)),
        ("figure1", add_leaf(cycle(3), 2)),
        ("empty2", graph_from_edges(2, [])),
    ]
    out += [(f"K{n}", complete(n)) for n in range(3, 8)]
    out += [(f"C{n}", cycle(n)) for n in range(3, 10)]
    out += [(f"P{n}", path(n)) for n in range(2, 10)]
    out += [(f"cycle-with-leaf({n})", cons.cycle_with_leaf(n).graph) for n in range(3, 8)]
    out += [(f"double-cycle-bridge({n})", cons.double_cycle_bridge(n).graph) for n in range(3, 6)]
    out += [(f"clique-with-leaves({k})", cons.clique_with_leaves(k).graph) for k in range(3, 6)]
    out += [("K1,3", star(3)), ("K1,9", star(9))]
    return out


def summarize(reports: Iterable[TheoremReport]) -> list[dict]:
    """Per-theorem counts, in first-seen order."""
    rows: dict[str, dict] = {}
    for r in reports:
        row = rows.setdefault(
            r.theorem_id, {"theorem_id": r.theorem_id, "graphs_checked": 0, "passes": 0, "fails": 0, "inconclusive": 0}
        )
        row["graphs_checked"] += 1
        row[{PASS: "passes", FAIL: "fails", INCONCLUSIVE: "inconclusive"}[r.verdict]] += 1
    return list(rows.values())


# -- extremal search -------------------------------------------------------------


@dataclass
class SearchState:
    target: str
    current: Graph
    realized_deltas: set[int] = field(default_factory=set)
    best: Graph | None = None
    best_deltas: set[int] = field(default_factory=set)
    rng_seed: int = 0
    step_count: int = 0
    restarts: int = 0
    delta_counts: dict[int, int] = field(default_factory=dict)

    @property
    def allowed(self) -> frozenset[int]:
        return EDGE_DELTAS if self.target == "edge-deltas" else VERTEX_DELTAS

    @property
    def complete(self) -> bool:
        return self.best_deltas == set(self.allowed)

    def as_dict(self) -> dict:
        return {
            "target": self.target,
            "best_graph6": to_graph6(self.best) if self.best is not None else None,
            "best_n": self.best.n if self.best is not None else None,
            "best_deltas": sorted(self.best_deltas),
            "realized_deltas": sorted(self.realized_deltas),
            "delta_counts": {str(k): v for k, v in sorted(self.delta_counts.items())},
            "all_values_realized": self.complete,
            "steps": self.step_count,
            "restarts": self.restarts,
            "seed": self.rng_seed,
        }


def _deltas(g: Graph, target: str, gamma: Gamma) -> list[int]:
    if target == "edge-deltas":
        return list(_edge_deltas(g, gamma).values())
    return list(_vertex_deltas(g, gamma).values())


def extremal_search(
    target: str = "edge-deltas",
    seed: int = 1,
    steps: int = 5000,
    n_range: tuple[int, int] = (4, 8),
    restarts: int = 20,
    seed_graph: Graph | None = None,
    stop_on_full: bool = True,
    node_budget: int | None = None,
) -> SearchState:
    """Hill-climb over single edge flips for a graph whose single deletions
    realize as many distinct changes of the L-Grundy number as possible.

    Score is the number of distinct deltas; ties prefer fewer vertices.  Moves
    that do not lower the score are accepted.  ``steps`` is the total number
    of proposed flips, split evenly over ``restarts``.  Any delta outside the
    proved range raises :class:`TheoremViolation`.
    """
    if target not in ("edge-deltas", "vertex-deltas"):
        raise ValueError(f"unknown search target {target!r}")
    lo, hi = n_range
    if not 1 <= lo <= hi:
        raise ValueError(f"bad n range {n_range}")
    rng = random.Random(seed)
    gamma = Gamma(node_budget)
    state = SearchState(target, seed_graph or graph_from_edges(lo, []), rng_seed=seed)
    allowed = state.allowed

    def evaluate(g: Graph) -> set[int]:
        ds = _deltas(g, target, gamma)
        for d in ds:
            state.delta_counts[d] = state.delta_counts.get(d, 0) + 1
        bad = [d for d in ds if d not in allowed]
        if bad:
            rep = TheoremReport(
                "edge-removal" if target == "edge-deltas" else "vertex-removal",
                to_graph6(g), f"deltas within {sorted(allowed)}", {"deltas": sorted(set(ds))}, FAIL,
            )
            raise TheoremViolation(rep)
        got = set(ds)
        state.realized_deltas |= got
        if state.best is None or (len(got), -g.n) > (len(state.best_deltas), -state.best.n):
            state.best, state.best_deltas = g, got
        return got

    per_restart = max(1, steps // max(1, restarts))
    done = 0
    for r in range(max(1, restarts)):
        if r and done >= steps:
            break
        if r == 0 and seed_graph is not None:
            cur = seed_graph
        else:
            cur = random_graph(rng.randint(lo, hi), 0.5, rng.randrange(2**32))
        state.restarts += 1
        score = len(evaluate(cur))
        budget = min(per_restart, steps - done)
        for _ in range(budget):
            done += 1
            state.step_count = done
            if cur.n < 2:
                break
            u, v = rng.sample(range(cur.n), 2)
            nxt = remove_edge(cur, u, v) if cur.has_edge(u, v) else add_edge(cur, u, v)
            s = len(evaluate(nxt))
            if s >= score:
                cur, score = nxt, s
            if stop_on_full and state.complete:
                state.current = cur
                return state
        state.current = cur
    return state
