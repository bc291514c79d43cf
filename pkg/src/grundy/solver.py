"""Exact Grundy-type domination numbers by subset-memoized branch and bound."""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

from .engine import L, TOTAL, Variant, validate_sequence, SequenceError
from .graph import Graph, GraphError, UnsupportedSize, bits, popcount

SOLVER_CAP = 32
ORACLE_CAP = 9


class WitnessError(RuntimeError):
    """The solver produced a witness the engine rejects (internal bug)."""


@dataclass(frozen=True)
class SolveOptions:
    memo_enabled: bool = True
    memo_cap: int = 24
    node_budget: int | None = None
    use_delta_bound_pruning: bool = True
    solver_cap: int = SOLVER_CAP

    def __post_init__(self):
        if self.memo_cap > 64:
            raise ValueError("memo_cap cannot exceed the graph size cap")


@dataclass
class SolveResult:
    value: int
    witness: list[int]
    exact: bool = True
    nodes_explored: int = 0
    memo_hits: int = 0
    pruned: int = 0
    elapsed: float = 0.0
    variant: str = "l"

    @property
    def outcome(self) -> str:
        return "exact" if self.exact else "budget"


class _Stop(Exception):
    pass


class _Budget(Exception):
    pass


def upper_bound(g: Graph, variant: Variant) -> int:
    """``n - δ + 1`` for L and TOTAL when ``δ >= 1``, else ``n``."""
    if g.n == 0:
        return 0
    d = g.min_degree()
    if variant in (L, TOTAL) and d >= 1:
        return g.n - d + 1
    return g.n


def greedy_bound(g: Graph, variant: Variant) -> list[int]:
    """Valid sequence picking the largest fresh set each step (ties: lowest index)."""
    cov, acc = variant.tables(g)
    seq: list[int] = []
    chosen = blocked = 0
    while True:
        best_v, best_k = -1, 0
        for v in range(g.n):
            if chosen >> v & 1:
                continue
            k = popcount(cov[v] & ~blocked)
            if k > best_k:
                best_v, best_k = v, k
        if best_v < 0:
            return seq
        seq.append(best_v)
        chosen |= 1 << best_v
        blocked |= acc[best_v]


def brute_oracle(g: Graph, variant: Variant, cap: int = ORACLE_CAP) -> int:
    """Longest valid sequence by plain recursion: no memo, no bounds."""
    if g.n > cap:
        raise UnsupportedSize(f"oracle limited to {cap} vertices, got {g.n}")
    cov, acc = variant.tables(g)
    n = g.n

    def rec(chosen: int, blocked: int) -> int:
        best = 0
        for v in range(n):
            if not chosen >> v & 1 and cov[v] & ~blocked:
                best = max(best, 1 + rec(chosen | 1 << v, blocked | acc[v]))
        return best

    return rec(0, 0)


def solve(g: Graph, variant: Variant = L, opts: SolveOptions | None = None) -> SolveResult:
    """Exact maximum sequence length with a witness.

    Depth-first over sequences in ascending vertex order.  Prefixes are keyed
    by their vertex set: blocked and candidate sets depend only on the set,
    and so does the prefix length, so a set already expanded can never lead
    to a better total and is skipped.  A node is cut when the prefix length
    plus a bound on the remaining steps cannot beat the incumbent.  The bound
    is the number of live candidates (candidates never revive), tightened by
    counting unblocked vertices that are left to footprint.  The whole search
    stops once the incumbent reaches :func:`upper_bound`.

    Disconnected graphs are solved one component at a time: a step only
    sees blocked vertices inside its own component, so optimal sequences of
    the components concatenate to an optimal sequence of the whole graph.

    If ``opts.node_budget`` runs out the result has ``exact=False`` and
    ``value`` is only the best length found.
    """
    opts = opts or SolveOptions()
    if g.n < 1:
        raise GraphError("solve needs at least one vertex")
    if g.n > opts.solver_cap:
        raise UnsupportedSize(f"solver limited to {opts.solver_cap} vertices, got {g.n}")
    comps = g.components()
    if len(comps) > 1:
        return _solve_components(g, comps, variant, opts)
    return _solve_connected(g, variant, opts)


def _solve_components(g: Graph, comps: list[int], variant: Variant, opts: SolveOptions) -> SolveResult:
    t0 = time.perf_counter()
    total = SolveResult(0, [], variant=variant.name)
    budget = opts.node_budget
    for c in comps:
        members = list(bits(c))
        sub_opts = replace(opts, node_budget=None if budget is None else max(1, budget - total.nodes_explored))
        r = _solve_connected(g.induced(members), variant, sub_opts)
        total.value += r.value
        total.witness += [members[v] for v in r.witness]
        total.exact = total.exact and r.exact
        total.nodes_explored += r.nodes_explored
        total.memo_hits += r.memo_hits
        total.pruned += r.pruned
    _check_witness(g, variant, total.witness, total.value)
    total.elapsed = time.perf_counter() - t0
    return total


def _check_witness(g: Graph, variant: Variant, witness: list[int], value: int) -> None:
    try:
        log = validate_sequence(g, variant, witness)
    except SequenceError as exc:
        raise WitnessError(f"solver witness {witness} rejected: {exc}") from exc
    if len(log) != value:
        raise WitnessError("witness length disagrees with reported value")


def _solve_connected(g: Graph, variant: Variant, opts: SolveOptions) -> SolveResult:
    t0 = time.perf_counter()
    n = g.n
    cov, acc = variant.tables(g)
    ub = upper_bound(g, variant) if opts.use_delta_bound_pruning else n
    use_memo = opts.memo_enabled and n <= opts.memo_cap
    memo: dict[int, int] = {}
    budget = opts.node_budget

    best_seq = greedy_bound(g, variant)
    st = {"best": len(best_seq), "nodes": 0, "hits": 0, "pruned": 0}
    path: list[int] = []
    # closed accumulation covers coverage: each vertex is footprinted at most once
    once = variant.closed_accumulation or not variant.closed_coverage
    rows = g.rows

    def _remaining_bound(cands: list[int], blocked: int) -> int:
        free = ~blocked
        reach = 0
        for v in cands:
            reach |= cov[v]
        if once:
            return min(len(cands), popcount(reach & free))
        # L: a future step footprints an unblocked neighbor (blocked afterwards)
        # or only itself
        selfish = sum(1 for v in cands if free >> v & 1)
        nb = 0
        for v in cands:
            nb |= rows[v]
        return min(len(cands), selfish + popcount(nb & free))

    def dfs(chosen: int, blocked: int) -> int:
        st["nodes"] += 1
        if budget is not None and st["nodes"] > budget:
            raise _Budget
        depth = len(path)
        cands = [v for v in range(n) if not chosen >> v & 1 and cov[v] & ~blocked]
        if depth > st["best"]:
            st["best"] = depth
            best_seq[:] = path
            if depth >= ub:
                raise _Stop
        if depth + _remaining_bound(cands, blocked) <= st["best"]:
            st["pruned"] += 1
            return 0
        ext = 0
        for v in cands:
            nxt = chosen | 1 << v
            if use_memo:
                if nxt in memo:
                    st["hits"] += 1
                    ext = max(ext, 1 + memo[nxt])
                    continue
                memo[nxt] = 0
            path.append(v)
            sub = dfs(nxt, blocked | acc[v])
            path.pop()
            if use_memo:
                memo[nxt] = sub
            ext = max(ext, 1 + sub)
        return ext

    exact = True
    if st["best"] < ub:
        try:
            dfs(0, 0)
        except _Stop:
            pass
        except _Budget:
            exact = False
    witness = list(best_seq)
    _check_witness(g, variant, witness, st["best"])
    return SolveResult(
        value=st["best"],
        witness=witness,
        exact=exact,
        nodes_explored=st["nodes"],
        memo_hits=st["hits"],
        pruned=st["pruned"],
        elapsed=time.perf_counter() - t0,
        variant=variant.name,
    )


def gamma(g: Graph, variant: Variant = L, opts: SolveOptions | None = None) -> int:
    """Exact value or :class:`BudgetExhausted`."""
    r = solve(g, variant, opts)
    if not r.exact:
        raise BudgetExhausted(r)
    return r.value


class BudgetExhausted(RuntimeError):
    def __init__(self, result: SolveResult):
        self.result = result
        super().__init__(f"node budget exhausted; best lower bound {result.value}")
