"""Footprint semantics for classic, total and L-Grundy sequences.

A variant is a pair of neighborhood kinds.  A step ``v`` is admissible when
its *coverage* neighborhood still contains a vertex outside the *blocked*
set, where blocked is the union of the *accumulation* neighborhoods of the
vertices chosen so far.

=========  ========  ============
variant    coverage  accumulation
=========  ========  ============
CLASSIC    N[v]      N[v]
TOTAL      N(v)      N(v)
L          N[v]      N(v)
=========  ========  ============
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph, GraphError, bits, popcount


@dataclass(frozen=True)
class Variant:
    name: str
    closed_coverage: bool
    closed_accumulation: bool

    def coverage(self, g: Graph, v: int) -> int:
        return g.closed_nbhd(v) if self.closed_coverage else g.open_nbhd(v)

    def accumulation(self, g: Graph, v: int) -> int:
        return g.closed_nbhd(v) if self.closed_accumulation else g.open_nbhd(v)

    def tables(self, g: Graph) -> tuple[list[int], list[int]]:
        """Per-vertex coverage and accumulation masks, for tight loops."""
        cov = [r | (1 << v) if self.closed_coverage else r for v, r in enumerate(g.rows)]
        acc = [r | (1 << v) if self.closed_accumulation else r for v, r in enumerate(g.rows)]
        return cov, acc

    @staticmethod
    def parse(name: str) -> Variant:
        try:
            return VARIANTS[name.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown variant {name!r}; expected one of {sorted(VARIANTS)}") from None

    def __str__(self) -> str:
        return self.name


CLASSIC = Variant("classic", True, True)
TOTAL = Variant("total", False, False)
L = Variant("l", True, False)
VARIANTS = {"classic": CLASSIC, "total": TOTAL, "l": L}


class SequenceError(ValueError):
    """A sequence that is not valid for the variant.

    ``index`` is the 0-based position of the first bad entry and ``reason``
    one of ``"duplicate"``, ``"empty"`` or ``"range"``.
    """

    def __init__(self, index: int, vertex: int, reason: str, detail: str = ""):
        self.index = index
        self.vertex = vertex
        self.reason = reason
        msg = {
            "duplicate": f"vertex {vertex} repeated at index {index}",
            "empty": f"vertex {vertex} at index {index} footprints nothing (fresh set is empty)",
            "range": f"vertex {vertex} at index {index} is out of range",
        }[reason]
        super().__init__(msg + (f"; {detail}" if detail else ""))


@dataclass(frozen=True)
class SequenceState:
    chosen: tuple[int, ...] = ()
    chosen_set: int = 0
    blocked: int = 0

    def index(self, v: int) -> int:
        """Position of ``v`` in the sequence, or -1."""
        try:
            return self.chosen.index(v)
        except ValueError:
            return -1


def fresh(g: Graph, variant: Variant, state: SequenceState, v: int) -> int:
    """Vertices ``v`` would footprint if appended now (bitmask)."""
    return variant.coverage(g, v) & ~state.blocked


def step_valid(g: Graph, variant: Variant, state: SequenceState, v: int) -> bool:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for order {g.n}")
    if state.chosen_set >> v & 1:
        return False
    return fresh(g, variant, state, v) != 0


def append_step(state: SequenceState, g: Graph, variant: Variant, v: int) -> SequenceState:
    if not 0 <= v < g.n:
        raise SequenceError(len(state.chosen), v, "range")
    if state.chosen_set >> v & 1:
        raise SequenceError(len(state.chosen), v, "duplicate")
    if not fresh(g, variant, state, v):
        raise SequenceError(len(state.chosen), v, "empty", "fresh set = {}")
    return SequenceState(
        state.chosen + (v,),
        state.chosen_set | 1 << v,
        state.blocked | variant.accumulation(g, v),
    )


def state_of(g: Graph, variant: Variant, seq: Sequence[int]) -> SequenceState:
    state = SequenceState()
    for v in seq:
        state = append_step(state, g, variant, v)
    return state


def candidates(g: Graph, variant: Variant, state: SequenceState) -> int:
    """Bitmask of every vertex that may be appended to ``state``."""
    out = 0
    for v in range(g.n):
        if step_valid(g, variant, state, v):
            out |= 1 << v
    return out


@dataclass
class FootprintLog:
    sequence: list[int]
    newly: list[int] = field(default_factory=list)
    footprinter: dict[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.sequence)

    def newly_sets(self) -> list[list[int]]:
        return [list(bits(m)) for m in self.newly]

    def attributions(self) -> dict[int, int]:
        """How many steps footprinted each vertex."""
        counts: dict[int, int] = {}
        for m in self.newly:
            for u in bits(m):
                counts[u] = counts.get(u, 0) + 1
        return counts


def validate_sequence(g: Graph, variant: Variant, seq: Sequence[int]) -> FootprintLog:
    """Check ``seq`` step by step and record what each step footprints.

    Raises :class:`SequenceError` at the earliest offending index.
    """
    log = FootprintLog(list(seq))
    state = SequenceState()
    for i, v in enumerate(seq):
        if not 0 <= v < g.n:
            raise SequenceError(i, v, "range")
        new = fresh(g, variant, state, v) if not state.chosen_set >> v & 1 else 0
        state = append_step(state, g, variant, v)
        log.newly.append(new)
        for u in bits(new):
            log.footprinter.setdefault(u, i)
    return log


def blocked_of(g: Graph, variant: Variant, chosen: int) -> int:
    """Blocked set as a function of the chosen *set* alone."""
    out = 0
    for v in bits(chosen):
        out |= variant.accumulation(g, v)
    return out


def fresh_size(g: Graph, variant: Variant, state: SequenceState, v: int) -> int:
    return popcount(fresh(g, variant, state, v))
