"""Simple undirected graphs stored as per-vertex adjacency bitmasks.

Vertices are the integers ``0..n-1``.  Row ``v`` of a :class:`Graph` is an
``int`` whose bit ``u`` is set iff ``uv`` is an edge.  Graphs are immutable;
every surgery returns a new graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

#: Default largest order accepted by any graph constructor.
SIZE_CAP = 64
#: Largest order accepted by :func:`enumerate_labeled_graphs` unless overridden.
ENUMERATE_CAP = 6

_G6_HEADER = ">>graph6<<"


class GraphError(ValueError):
    """Rejected graph input: bad edge, bad vertex, or malformed encoding."""


class UnsupportedSize(GraphError):
    pass


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> Iterator[int]:
    """Yield the indices of set bits of ``x`` in ascending order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative order {self.n}")
        if self.n > SIZE_CAP:
            raise UnsupportedSize(f"order {self.n} exceeds size cap {SIZE_CAP}")
        if len(self.rows) != self.n:
            raise GraphError(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"row {v} references a vertex >= {self.n}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.rows[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for order {self.n}")

    def open_nbhd(self, v: int) -> int:
        """Open neighborhood of ``v`` as a bitmask."""
        self._check_vertex(v)
        return self.rows[v]

    def closed_nbhd(self, v: int) -> int:
        self._check_vertex(v)
        return self.rows[v] | (1 << v)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return popcount(self.rows[v])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.rows]

    def min_degree(self) -> int:
        if self.n == 0:
            raise GraphError("minimum degree of the empty graph is undefined")
        return min(self.degrees())

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(self.degrees()) // 2

    def is_complete(self) -> bool:
        return all(self.rows[v] == self.full_mask ^ (1 << v) for v in range(self.n))

    def components(self) -> list[int]:
        """Connected components as vertex bitmasks, ordered by least vertex."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.rows[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components())

    def induced(self, keep: Sequence[int]) -> Graph:
        """Induced subgraph on ``keep``, relabeled in the given order."""
        index = {v: i for i, v in enumerate(keep)}
        if len(index) != len(keep):
            raise GraphError("duplicate vertex in induced-subgraph selection")
        rows = []
        for v in keep:
            self._check_vertex(v)
            rows.append(mask_of(index[u] for u in bits(self.rows[v]) if u in index))
        return Graph(len(keep), tuple(rows))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph in which old vertex ``v`` becomes ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabeling must be a permutation of the vertices")
        rows = [0] * self.n
        for v in range(self.n):
            rows[perm[v]] = mask_of(perm[u] for u in bits(self.rows[v]))
        return Graph(self.n, tuple(rows))

    def __str__(self) -> str:
        return to_graph6(self) if self.n <= SIZE_CAP else f"Graph(n={self.n})"


# -- construction -------------------------------------------------------


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise GraphError(f"negative order {n}")
    rows = [0] * n
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {tuple(e)} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"edge {tuple(e)} is a self-loop")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


# -- graph6 -------------------------------------------------------------


def _pair_order(n: int) -> Iterator[tuple[int, int]]:
    # upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(line: str | bytes, cap: int = SIZE_CAP) -> Graph:
    """Decode one graph6 line."""
    if isinstance(line, bytes):
        line = line.decode("ascii", errors="replace")
    s = line.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise GraphError("empty graph6 string")
    if s[0] == ":" or s[0] == "&":
        raise GraphError("sparse6/digraph6 input is not supported")
    data = []
    for pos, ch in enumerate(s):
        b = ord(ch)
        if not 63 <= b <= 126:
            raise GraphError(f"malformed graph6: byte {b!r} at offset {pos} outside 63..126")
        data.append(b - 63)
    if data[0] == 63:
        if len(data) >= 2 and data[1] == 63:
            raise UnsupportedSize("graph6 8-byte order field is not supported")
        if len(data) < 4:
            raise GraphError("malformed graph6: truncated order field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        payload = data[4:]
    else:
        n = data[0]
        payload = data[1:]
    if n > cap:
        raise UnsupportedSize(f"graph6 order {n} exceeds cap {cap}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(payload) != need:
        what = "truncated" if len(payload) < need else "overlong"
        raise GraphError(f"malformed graph6: {what} payload ({len(payload)} bytes, expected {need})")
    rows = [0] * n
    k = 0
    for i, j in _pair_order(n):
        if payload[k // 6] >> (5 - k % 6) & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        k += 1
    return Graph(n, tuple(rows))


def to_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        out = [n]
    elif n <= 258047:
        out = [63, n >> 12 & 63, n >> 6 & 63, n & 63]
    else:  # pragma: no cover - unreachable under SIZE_CAP
        raise UnsupportedSize(f"order {n} outside graph6 range")
    acc = nacc = 0
    for i, j in _pair_order(n):
        acc = acc << 1 | (g.rows[i] >> j & 1)
        nacc += 1
        if nacc == 6:
            out.append(acc)
            acc = nacc = 0
    if nacc:
        out.append(acc << (6 - nacc))
    return "".join(chr(b + 63) for b in out)


# -- edge-list text ------------------------------------------------------


def parse_edgelist(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"`` (0-based)."""
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise GraphError("edge list must start with a 'n m' header line")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        edges = [(int(a), int(b)) for a, b in (ln for ln in lines[1:])]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"edge list header announces {m} edges, found {len(edges)}")
    return graph_from_edges(n, edges)


def to_edgelist(g: Graph) -> str:
    es = g.edges()
    return "\n".join([f"{g.n} {len(es)}"] + [f"{u} {v}" for u, v in es]) + "\n"


def read_graphs(text: str) -> Iterator[tuple[str, Graph | GraphError]]:
    """Split a text stream into graphs, auto-detecting the format.

    A line that starts with a digit and has two tokens opens an edge-list
    block of ``m`` following lines; any other non-blank line is graph6.
    Yields ``(source_text, graph_or_error)`` so callers can keep going past
    malformed records.
    """
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        raw = lines[i].strip()
        i += 1
        if not raw or raw.startswith("#"):
            continue
        toks = raw.split()
        if raw[0].isdigit() and len(toks) == 2:
            try:
                m = int(toks[1])
            except ValueError:
                yield raw, GraphError(f"malformed edge-list header {raw!r}")
                continue
            block = [raw] + [ln.strip() for ln in lines[i:i + m]]
            i += m
            src = "\n".join(block)
            try:
                yield src, parse_edgelist(src)
            except GraphError as exc:
                yield src, exc
        else:
            try:
                yield raw, parse_graph6(raw)
            except GraphError as exc:
                yield raw, exc


# -- surgeries -----------------------------------------------------------


def remove_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise GraphError(f"edge ({u}, {v}) is not present")
    rows = list(g.rows)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    return Graph(g.n, tuple(rows))


def add_edge(g: Graph, u: int, v: int) -> Graph:
    g._check_vertex(u)
    g._check_vertex(v)
    if u == v:
        raise GraphError(f"edge ({u}, {v}) is a self-loop")
    if g.has_edge(u, v):
        raise GraphError(f"edge ({u}, {v}) is already present")
    rows = list(g.rows)
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    return Graph(g.n, tuple(rows))


def remove_vertex(g: Graph, v: int) -> Graph:
    """Delete ``v``; vertices above ``v`` shift down by one."""
    g._check_vertex(v)
    return g.induced([u for u in range(g.n) if u != v])


def add_leaf(g: Graph, v: int) -> Graph:
    """Attach a new vertex ``g.n`` adjacent only to ``v``."""
    g._check_vertex(v)
    rows = list(g.rows) + [1 << v]
    rows[v] |= 1 << g.n
    return Graph(g.n + 1, tuple(rows))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """``g`` on ``0..g.n-1`` followed by ``h`` shifted up by ``g.n``."""
    return Graph(g.n + h.n, g.rows + tuple(r << g.n for r in h.rows))


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Vertex ``(a, b)`` is flattened to ``a * h.n + b``."""
    if g.n < 1 or h.n < 1:
        raise GraphError("cartesian product needs two non-empty factors")
    n = g.n * h.n
    if n > SIZE_CAP:
        raise UnsupportedSize(f"product order {n} exceeds size cap {SIZE_CAP}")
    edges = []
    for a in range(g.n):
        for b, b2 in h.edges():
            edges.append((a * h.n + b, a * h.n + b2))
    for a, a2 in g.edges():
        for b in range(h.n):
            edges.append((a * h.n + b, a2 * h.n + b))
    return graph_from_edges(n, edges)


# -- generators ----------------------------------------------------------


def edgeless(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path(n: int) -> Graph:
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs at least 3 vertices, got {n}")
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return graph_from_edges(n, combinations(range(n), 2))


def complete_multipartite(parts: Sequence[int]) -> Graph:
    if any(p < 0 for p in parts):
        raise GraphError("part sizes must be non-negative")
    label = []
    for i, p in enumerate(parts):
        label += [i] * p
    n = len(label)
    return graph_from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if label[u] != label[v]])


def star(leaves: int) -> Graph:
    return complete_multipartite([1, leaves])


def random_graph(n: int, p: float, seed: int | None = None) -> Graph:
    """Erdős–Rényi G(n, p); deterministic for a given seed."""
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability {p} outside [0, 1]")
    rng = random.Random(seed)
    return graph_from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_tree(n: int, seed: int | None = None) -> Graph:
    """Uniform labeled tree via a random Prüfer sequence."""
    if n <= 1:
        return edgeless(max(n, 0))
    rng = random.Random(seed)
    if n == 2:
        return graph_from_edges(2, [(0, 1)])
    prufer = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in prufer:
        degree[x] += 1
    edges = []
    for x in prufer:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = (v for v in range(n) if degree[v] == 1)
    edges.append((u, w))
    return graph_from_edges(n, edges)


def random_forest(n: int, seed: int | None = None, p_cut: float = 0.2) -> Graph:
    """A random tree with each edge independently dropped with ``p_cut``."""
    rng = random.Random(seed)
    t = random_tree(n, rng.randrange(2**32))
    return graph_from_edges(n, [e for e in t.edges() if rng.random() >= p_cut])


def enumerate_labeled_graphs(n: int, cap: int = ENUMERATE_CAP) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices, in graph6 bit-pattern order."""
    if n > cap:
        raise UnsupportedSize(f"enumeration of order {n} exceeds budget cap {cap}")
    pairs = list(_pair_order(n))
    for code in range(1 << len(pairs)):
        rows = [0] * n
        for k, (i, j) in enumerate(pairs):
            if code >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        yield Graph(n, tuple(rows))
