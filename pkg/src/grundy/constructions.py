"""Graph families with explicit L-sequence witnesses of known length.

Every builder returns a :class:`ConstructionOutput` whose witness has
already been replayed through :func:`grundy.engine.validate_sequence`.

Vertex naming follows the usual 1-indexed textbook labels mapped to
0-indexed integers: ``v_i -> i - 1``; added pendants are numbered after the
original vertices in ascending order of their attachment point.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .engine import L, SequenceError, Variant, validate_sequence
from .graph import (
    Graph,
    GraphError,
    add_leaf,
    bits,
    complete,
    cycle,
    disjoint_union,
    graph_from_edges,
    popcount,
)
from .solver import solve

PROVENANCE = (
    "cycle",
    "cycle-with-leaf",
    "clique-with-leaves",
    "saturate",
    "leaf-augment",
    "double-cycle-bridge",
)


class ConstructionError(ValueError):
    """Bad parameters, or a hypothesis the construction needs does not hold."""


@dataclass
class ConstructionOutput:
    graph: Graph
    witness: list[int]
    expected_gamma: int
    provenance: str
    notes: list[str] = field(default_factory=list)

    def as_dict(self, one_indexed: bool = False) -> dict:
        from .graph import to_graph6

        shift = 1 if one_indexed else 0
        return {
            "family": self.provenance,
            "graph6": to_graph6(self.graph),
            "n": self.graph.n,
            "witness": [v + shift for v in self.witness],
            "expected_gamma": self.expected_gamma,
            "notes": self.notes,
        }


def _checked(g: Graph, witness: list[int], expected: int, tag: str, variant: Variant = L, notes=None):
    try:
        log = validate_sequence(g, variant, witness)
    except SequenceError as exc:
        raise ConstructionError(f"{tag}: witness {witness} rejected by the engine: {exc}") from exc
    if len(log) != expected:
        raise ConstructionError(f"{tag}: witness length {len(log)} != expected {expected}")
    return ConstructionOutput(g, list(witness), expected, tag, list(notes or []))


def cycle_order(n: int) -> list[int]:
    """Odd-labelled vertices ascending, then even ones descending, skipping v_2."""
    if n < 3:
        raise ConstructionError(f"cycle needs n >= 3, got {n}")
    odd = list(range(1, n + 1, 2))
    even = [i for i in range(n, 3, -1) if i % 2 == 0]
    return [i - 1 for i in odd + even]


def cycle_witness(n: int) -> ConstructionOutput:
    return _checked(cycle(n), cycle_order(n), n - 1, "cycle")


def cycle_with_leaf(n: int) -> ConstructionOutput:
    """C_n with a leaf ``u = n`` on ``v_2``; the witness uses every vertex."""
    if n < 3:
        raise ConstructionError(f"cycle needs n >= 3, got {n}")
    g = add_leaf(cycle(n), 1)
    return _checked(g, [n] + cycle_order(n) + [1], n + 1, "cycle-with-leaf")


def clique_with_leaves(k: int) -> ConstructionOutput:
    """K_k on ``u_i = i-1`` with a pendant ``v_i = k+i-1`` on each ``u_i``, i < k."""
    if k < 2:
        raise ConstructionError(f"clique_with_leaves needs k >= 2, got {k}")
    notes = []
    if k == 2:
        warnings.warn("clique_with_leaves(2) is the path P_3 (a tree)", stacklevel=2)
        notes.append("degenerate: k=2 gives P_3")
    g = complete(k)
    for i in range(k - 1):
        g = add_leaf(g, i)
    pendants = list(range(k, 2 * k - 1))
    witness = [k - 1] + pendants + list(range(k - 1))
    return _checked(g, witness, 2 * k - 1, "clique-with-leaves", notes=notes)


def saturate(g: Graph, s: list[int]) -> ConstructionOutput:
    """Pendant on every vertex outside a maximum L-sequence ``s``.

    ``s`` must be a maximum L-sequence of ``g`` with ``|s| < n``; this is
    re-checked with the exact solver.  The result has ``2n - |s|`` vertices
    and a full-length witness: ``s``, the pendants, then the vertices
    that were outside ``s``.
    """
    try:
        validate_sequence(g, L, s)
    except SequenceError as exc:
        raise ConstructionError(f"saturate: sequence is not an L-sequence: {exc}") from exc
    best = solve(g, L)
    if len(s) != best.value:
        raise ConstructionError(f"saturate: sequence has length {len(s)}, maximum is {best.value}")
    k, n = len(s), g.n
    if k >= n:
        raise ConstructionError("saturate: sequence already covers every vertex")
    inside = set(s)
    outside = [v for v in range(n) if v not in inside]
    h = g
    for v in outside:
        h = add_leaf(h, v)
    pendants = list(range(n, n + len(outside)))
    return _checked(h, list(s) + pendants + outside, 2 * n - k, "saturate")


# -- leaf augmentation ----------------------------------------------------


def peel_order(g: Graph) -> list[int] | None:
    """Full-length L-sequence by peeling, or ``None`` if peeling gets stuck.

    Repeatedly remove an isolated vertex or a vertex with a pendant neighbor
    and put it *last*; the removed vertex footprints its pendant (or itself),
    and nothing earlier can block that vertex.  Always succeeds on forests.
    """
    alive = g.full_mask
    rows = list(g.rows)
    tail: list[int] = []
    while alive:
        pick = -1
        for v in bits(alive):
            nb = rows[v] & alive
            if not nb or any(not (rows[u] & alive & ~(1 << v)) for u in bits(nb)):
                pick = v
                break
        if pick < 0:
            return None
        tail.append(pick)
        alive &= ~(1 << pick)
    return tail[::-1]


def _chains(g: Graph, deg: list[int], comp: int) -> list[list[int]]:
    """Maximal runs of degree-2 vertices inside ``comp``, each as an ordered path.

    A run that closes on itself (a cycle component) is returned starting at
    its least vertex.
    """
    two = 0
    for v in bits(comp):
        if deg[v] == 2:
            two |= 1 << v
    out = []
    left = two
    while left:
        comp_run = frontier = left & -left
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.rows[v] & two
            frontier = nxt & ~comp_run
            comp_run |= frontier
        left &= ~comp_run
        members = list(bits(comp_run))
        ends = [v for v in members if popcount(g.rows[v] & two) < 2]
        start = ends[0] if ends else members[0]
        run, prev, cur = [start], -1, start
        while True:
            nxt = [u for u in bits(g.rows[cur] & two) if u != prev and u not in run]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            run.append(cur)
        out.append(run)
    return out


def _three_phase_violation(g: Graph, deg: list[int], comp: int) -> str | None:
    for v in bits(comp):
        if deg[v] >= 3 and not any(deg[u] == 1 for u in bits(g.rows[v])):
            return f"vertex {v} has degree {deg[v]} but no pendant neighbor"
    for run in _chains(g, deg, comp):
        inner = set(run)
        ends = [u for v in run for u in bits(g.rows[v]) if u not in inner]
        if len(ends) < 2 and all(deg[v] == 2 for v in run):
            return f"degree-2 vertices {run} form a cycle with no higher-degree vertex"
        for u in ends:
            if deg[u] < 3:
                return f"chain {run} ends at vertex {u} of degree {deg[u]}"
    return None


def _three_phase(g: Graph, deg: list[int], comps: list[int]) -> list[int]:
    from .engine import SequenceState, append_step

    order: list[int] = []
    state = SequenceState()

    def push(v):
        nonlocal state
        state = append_step(state, g, L, v)
        order.append(v)

    members = 0
    for c in comps:
        members |= c
    # degree 2: single vertices, pairs, then longer runs
    for c in comps:
        for run in _chains(g, deg, c):
            if len(run) <= 2:
                for v in run:
                    push(v)
                continue
            for v in run[:-2]:
                push(v)
            far = [u for u in bits(g.rows[run[-1]]) if u != run[-2]][0]
            if not state.blocked >> far & 1:
                push(run[-2])
                push(run[-1])
            else:
                push(run[-1])
                push(run[-2])
    for v in bits(members):
        if deg[v] <= 1:
            push(v)
    for v in bits(members):
        if deg[v] >= 3:
            push(v)
    return order


def proof_order_witness(g: Graph, strict: bool = True) -> list[int]:
    """Full-length L-sequence in three phases: degree 2, degree <= 1, degree >= 3.

    Components where every vertex of degree >= 3 has a pendant neighbor and
    every run of degree-2 vertices ends at vertices of degree >= 3 are
    handled by the phases.  Other forest components are peeled
    (:func:`peel_order`).  Anything else raises, unless ``strict`` is false,
    in which case peeling is attempted there too.
    """
    deg = g.degrees()
    phased, peeled = [], []
    for c in g.components():
        why = _three_phase_violation(g, deg, c)
        if why is None:
            phased.append(c)
            continue
        sub_vertices = list(bits(c))
        sub = g.induced(sub_vertices)
        if not (sub.is_forest() or not strict):
            raise ConstructionError(f"hypothesis fails: {why}")
        order = peel_order(sub)
        if order is None:
            raise ConstructionError(f"hypothesis fails and peeling is stuck: {why}")
        peeled.extend(sub_vertices[i] for i in order)
    seq = (_three_phase(g, deg, phased) if phased else []) + peeled
    try:
        validate_sequence(g, L, seq)
    except SequenceError as exc:
        raise ConstructionError(f"phase ordering {seq} rejected by the engine: {exc}") from exc
    return seq


def leaf_augment(g: Graph) -> ConstructionOutput:
    """Attach one pendant to every vertex of degree >= 3."""
    heavy = [v for v in range(g.n) if g.degree(v) >= 3]
    h = g
    for v in heavy:
        h = add_leaf(h, v)
    notes = [] if heavy else ["no vertex of degree >= 3; graph unchanged"]
    try:
        w = proof_order_witness(h, strict=True)
    except ConstructionError as strict_err:
        w = proof_order_witness(h, strict=False)
        notes.append(f"peeling used outside the phase rules ({strict_err})")
    return _checked(h, w, h.n, "leaf-augment", notes=notes)


# -- worked examples ----------------------------------------------------------


def double_cycle_bridge(n: int) -> ConstructionOutput:
    """Two copies of C_n joined by a bridge between their ``v_2`` vertices.

    First cycle on ``0..n-1``, second on ``n..2n-1``; bridge ``(1, n+1)``.
    """
    if n < 3:
        raise ConstructionError(f"cycle needs n >= 3, got {n}")
    g = graph_from_edges(2 * n, disjoint_union(cycle(n), cycle(n)).edges() + [(1, n + 1)])
    tail = list(range(n - 3)) + [n - 2, n - 3] if n > 3 else [0, 1]
    witness = cycle_order(n) + [1] + [n + i for i in tail]
    return _checked(g, witness, 2 * n - 1, "double-cycle-bridge")


def double_cycle_bridge_edge(n: int) -> tuple[int, int]:
    return (1, n + 1)


def t_structure_instance(k: int) -> Graph:
    """Half graph plus matching: ``x_i = i-1``, ``y_j = k+j-1``, ``y_j ~ x_i`` iff ``i >= j``.

    Its total Grundy number is ``2k`` (witness :func:`t_structure_witness`).
    """
    if k < 1:
        raise GraphError(f"k must be >= 1, got {k}")
    return graph_from_edges(2 * k, [(i, k + j) for j in range(k) for i in range(j, k)])


def t_structure_witness(k: int) -> list[int]:
    """All ``x`` ascending, then all ``y`` descending."""
    return list(range(k)) + list(range(2 * k - 1, k - 1, -1))


FAMILIES = {
    "cycle": cycle_witness,
    "cycle-with-leaf": cycle_with_leaf,
    "clique-with-leaves": clique_with_leaves,
    "double-cycle-bridge": double_cycle_bridge,
}
