"""Simple undirected graphs stored as one adjacency bitmask per vertex.

Vertices are always ``0..n-1``.  Every surgery returns a new graph together
with an explicit ``old -> new`` renumbering so that certificates found on the
smaller graph can be mapped back mechanically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple


class EdgeListError(ValueError):
    """Malformed edge-list input; ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int | None = None, source: str | None = None):
        self.lineno = lineno
        self.source = source
        where = ""
        if source is not None and lineno is not None:
            where = f"{source}:{lineno}: "
        elif lineno is not None:
            where = f"line {lineno}: "
        super().__init__(where + message)


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    ``rows[v]`` is the bitmask of neighbours of ``v``.  Use the constructors
    (:meth:`from_edges`, :func:`parse_edge_list`, ...) unless the rows are
    known to be symmetric and loop-free.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.rows)}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if rows[u] >> v & 1:
                raise ValueError(f"duplicate edge ({u}, {v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_rows(cls, rows: Iterable[int]) -> Graph:
        rows = tuple(int(r) for r in rows)
        n = len(rows)
        for v, r in enumerate(rows):
            if r >> v & 1:
                raise ValueError(f"self-loop at {v}")
            if r >> n:
                raise ValueError(f"row {v} references a vertex >= {n}")
            for u in bits(r):
                if not rows[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        return cls(n, rows)

    # -- basic queries -------------------------------------------------

    @cached_property
    def m(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    @property
    def edge_count(self) -> int:
        return self.m

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.rows)

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def neighbors(self, v: int) -> list[int]:
        return bits(self.rows[v])

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v``, lexicographically sorted."""
        out = []
        for u, r in enumerate(self.rows):
            for v in bits(r >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def attachment(self, v: int, vertices: Iterable[int] | int) -> int:
        """Number of edges from ``v`` into ``vertices`` (a mask or iterable)."""
        mask = vertices if isinstance(vertices, int) else to_mask(vertices)
        return (self.rows[v] & mask).bit_count()

    def edges_between(self, U: Iterable[int], W: Iterable[int]) -> int:
        """``||U, W||`` for disjoint vertex sets."""
        U = list(U)
        wmask = to_mask(W)
        if to_mask(U) & wmask:
            raise ValueError("vertex sets must be disjoint")
        return sum((self.rows[u] & wmask).bit_count() for u in U)

    def is_triangle(self, a: int, b: int, c: int) -> bool:
        return (
            len({a, b, c}) == 3
            and self.has_edge(a, b)
            and self.has_edge(b, c)
            and self.has_edge(a, c)
        )

    def triangles(self) -> list[tuple[int, int, int]]:
        """All triangles as sorted triples, in lexicographic order."""
        out = []
        rows = self.rows
        for a in range(self.n):
            ra = rows[a] >> (a + 1) << (a + 1)
            for b in bits(ra):
                common = ra & rows[b] >> (b + 1) << (b + 1)
                for c in bits(common):
                    out.append((a, b, c))
        return out

    def common_neighbors(self, vertices: Iterable[int]) -> int:
        """Mask of vertices adjacent to every vertex in ``vertices``."""
        mask = self.all_mask
        for v in vertices:
            mask &= self.rows[v]
        return mask

    # -- conversions ---------------------------------------------------

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def is_isomorphic(self, other: Graph) -> bool:
        """Brute-force isomorphism test, meant for graphs with at most ~8 vertices."""
        if self.n != other.n or self.m != other.m:
            return False
        if sorted(self.degrees) != sorted(other.degrees):
            return False
        by_degree = {}
        for v, d in enumerate(other.degrees):
            by_degree.setdefault(d, []).append(v)
        mine = self.edges()
        for perm in itertools.permutations(range(other.n)):
            if any(self.degrees[v] != other.degrees[perm[v]] for v in range(self.n)):
                continue
            if all(other.has_edge(perm[u], perm[v]) for u, v in mine):
                return True
        return False


# -- construction --------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}: side A is ``0..a-1``, side B is ``a..a+b-1``."""
    return Graph.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph(g.n + h.n, g.rows + tuple(r << shift for r in h.rows))


def join(g: Graph, h: Graph) -> Graph:
    """``g ∨ h``: disjoint union plus every edge between the two parts."""
    gmask = g.all_mask
    hmask = h.all_mask << g.n
    rows = tuple(r | hmask for r in g.rows) + tuple((r << g.n) | gmask for r in h.rows)
    return Graph(g.n + h.n, rows)


def parse_edge_list(text: str, source: str | None = None) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"`` (0-indexed).

    Blank lines are ignored.  Duplicate edges, self-loops, out-of-range ids
    and a wrong edge count are errors carrying the offending line number.
    """
    header = None
    n = m = 0
    rows: list[int] = []
    seen = 0
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(f"expected two integers, got {line!r}", lineno, source)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"expected two integers, got {line!r}", lineno, source) from None
        if header is None:
            if a < 0 or b < 0:
                raise EdgeListError("negative header value", lineno, source)
            header = lineno
            n, m = a, b
            rows = [0] * n
            continue
        if seen >= m:
            raise EdgeListError(f"more than the declared {m} edges", lineno, source)
        if not (0 <= a < n and 0 <= b < n):
            raise EdgeListError(f"vertex id out of range 0..{n - 1}: {line!r}", lineno, source)
        if a == b:
            raise EdgeListError(f"self-loop at vertex {a}", lineno, source)
        if rows[a] >> b & 1:
            raise EdgeListError(f"duplicate edge {a} {b}", lineno, source)
        rows[a] |= 1 << b
        rows[b] |= 1 << a
        seen += 1
    if header is None:
        raise EdgeListError("missing header line 'n m'", max(last_line, 1), source)
    if seen != m:
        raise EdgeListError(f"declared {m} edges but found {seen}", max(last_line, 1), source)
    return Graph(n, tuple(rows))


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read(), source=str(path))


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(g.to_edge_list())


# -- surgery ---------------------------------------------------------------

class Contraction(NamedTuple):
    graph: Graph
    vertex: int
    mapping: dict[int, int]


def _compact(g: Graph, keep: list[int]) -> tuple[Graph, dict[int, int]]:
    mapping = {old: new for new, old in enumerate(keep)}
    rows = []
    for old in keep:
        r = 0
        for u in bits(g.rows[old]):
            if u in mapping:
                r |= 1 << mapping[u]
        rows.append(r)
    return Graph(len(keep), tuple(rows)), mapping


def delete_vertices(g: Graph, X: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``V - X``; the map covers surviving vertices only."""
    xmask = to_mask(X)
    if xmask >> g.n:
        raise ValueError("X contains vertices outside the graph")
    keep = [v for v in range(g.n) if not xmask >> v & 1]
    return _compact(g, keep)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    return _compact(g, sorted(set(vertices)))


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    rows = list(g.rows)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    return Graph(g.n, tuple(rows))


def contract_edge(g: Graph, u: int, v: int) -> Contraction:
    """Contract ``uv``; the merged vertex takes the slot of ``min(u, v)``.

    Returns the new graph, the id of the merged vertex and the renumbering
    map (both ``u`` and ``v`` map to the merged vertex).
    """
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    keep_v, drop_v = min(u, v), max(u, v)
    rows = list(g.rows)
    merged = (rows[u] | rows[v]) & ~((1 << u) | (1 << v))
    for w in bits(rows[drop_v]):
        if w != keep_v:
            rows[w] = (rows[w] & ~(1 << drop_v)) | (1 << keep_v)
    rows[keep_v] = merged
    rows[drop_v] = 0
    tmp = Graph(g.n, tuple(rows))
    keep = [w for w in range(g.n) if w != drop_v]
    h, mapping = _compact(tmp, keep)
    mapping[drop_v] = mapping[keep_v]
    return Contraction(h, mapping[keep_v], mapping)


def two_core(g: Graph) -> tuple[Graph, list[int]]:
    """Iteratively delete vertices of degree <= 1.

    Deletion order: initial candidates by increasing id, then first-in
    first-out as degrees drop.  Survivors keep their relative order.
    """
    deg = list(g.degrees)
    alive = [True] * g.n
    queue = [v for v in range(g.n) if deg[v] <= 1]
    queued = set(queue)
    removed = []
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        alive[v] = False
        removed.append(v)
        for u in bits(g.rows[v]):
            if alive[u]:
                deg[u] -= 1
                if deg[u] <= 1 and u not in queued:
                    queued.add(u)
                    queue.append(u)
    core, _ = _compact(g, [v for v in range(g.n) if alive[v]])
    return core, removed


def core_mapping(n: int, removed: Iterable[int]) -> dict[int, int]:
    """Renumbering map matching :func:`two_core`'s output."""
    gone = set(removed)
    keep = [v for v in range(n) if v not in gone]
    return {old: new for new, old in enumerate(keep)}
