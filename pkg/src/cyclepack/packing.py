"""Cycle and triangle packings: certificates, exact searches and a heuristic."""

from __future__ import annotations

import enum
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from . import _kernels as K
from .graph import Graph, bits, delete_vertices, to_mask

log = logging.getLogger(__name__)

DEFAULT_EXACT_LIMIT = 40
DEFAULT_NODE_BUDGET = 10**7


class ExactLimitError(ValueError):
    """The graph is too large for the requested exact computation."""


class SearchExhausted(RuntimeError):
    """An exact computation ran out of its node budget."""


@dataclass(frozen=True)
class Config:
    exact_limit: int = DEFAULT_EXACT_LIMIT
    node_budget: int = DEFAULT_NODE_BUDGET
    jobs: int = 1
    seed: int | None = None
    output_dir: str | None = None

    def __post_init__(self):
        if not 3 <= self.exact_limit <= K.MAX_VERTICES:
            raise ValueError(f"exact_limit must be in [3, {K.MAX_VERTICES}]")
        if self.node_budget < 1:
            raise ValueError("node_budget must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")


DEFAULT_CONFIG = Config()


def normalize_cycle(cycle: Iterable[int]) -> tuple[int, ...]:
    """Rotate so the minimum vertex is first, then pick the smaller orientation."""
    c = list(cycle)
    i = c.index(min(c))
    c = c[i:] + c[:i]
    rev = [c[0]] + c[:0:-1]
    return tuple(min(c, rev))


@dataclass(frozen=True)
class CyclePacking:
    cycles: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def of(cls, cycles: Iterable[Iterable[int]]) -> CyclePacking:
        return cls(tuple(sorted(normalize_cycle(c) for c in cycles)))

    def __len__(self) -> int:
        return len(self.cycles)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for c in self.cycles for v in c)

    def to_json(self) -> dict:
        return {"cycles": [list(c) for c in self.cycles]}


@dataclass(frozen=True)
class TrianglePacking:
    triangles: tuple[tuple[int, int, int], ...] = ()
    union: frozenset[int] = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "triangles", tuple(tuple(t) for t in self.triangles))
        object.__setattr__(self, "union", frozenset(v for t in self.triangles for v in t))

    def __len__(self) -> int:
        return len(self.triangles)

    @property
    def mask(self) -> int:
        return to_mask(self.union)

    def as_cycles(self) -> CyclePacking:
        return CyclePacking.of(self.triangles)


def verify_cycle_packing(g: Graph, p: CyclePacking | Iterable[Iterable[int]]) -> bool:
    cycles = p.cycles if isinstance(p, CyclePacking) else p
    used = 0
    for c in cycles:
        c = list(c)
        if len(c) < 3:
            return False
        for v in c:
            if not (isinstance(v, int) and 0 <= v < g.n) or used >> v & 1:
                return False
            used |= 1 << v
        for a, b in zip(c, c[1:] + c[:1]):
            if not g.has_edge(a, b):
                return False
    return True


def verify_triangle_packing(g: Graph, p: TrianglePacking | Iterable[Iterable[int]]) -> bool:
    triangles = p.triangles if isinstance(p, TrianglePacking) else p
    used = 0
    for t in triangles:
        t = tuple(t)
        if len(t) != 3 or not all(isinstance(v, int) and 0 <= v < g.n for v in t):
            return False
        if not g.is_triangle(*t):
            return False
        m = to_mask(t)
        if used & m:
            return False
        used |= m
    return True


class Status(enum.Enum):
    FOUND = "found"
    NOT_EXIST = "not_exist"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class SearchResult:
    status: Status
    packing: CyclePacking | None = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND


# -- exact search -------------------------------------------------------------

def _check_kernel_size(g: Graph) -> None:
    if g.n > K.MAX_VERTICES:
        raise ExactLimitError(f"exact search supports at most {K.MAX_VERTICES} vertices, got {g.n}")


def exact_cycle_search(g: Graph, k: int, budget: int = DEFAULT_NODE_BUDGET) -> SearchResult:
    """Complete branch-and-bound search for ``k`` disjoint cycles."""
    if k <= 0:
        return SearchResult(Status.FOUND, CyclePacking(), 0)
    _check_kernel_size(g)
    if g.n < 3 * k:
        return SearchResult(Status.NOT_EXIST, None, 0)
    rows = K.as_rows(g.rows)
    counter = K._scratch(2, 0)
    counter[1] = budget
    keys, vals = K.memo_tables(g.n)
    out = K._scratch2(k, g.n + 1)
    out_len = K._scratch(k, 0)
    r = K.search_cycles(rows, g.all_mask, k, counter, keys, vals, out, out_len, 0)
    nodes = int(counter[0])
    if r == K.FOUND:
        cycles = [[int(x) for x in out[i][: int(out_len[i])]] for i in range(k)]
        packing = CyclePacking.of(cycles)
        if not verify_cycle_packing(g, packing):
            raise AssertionError(f"exact search produced an invalid packing {packing}")
        return SearchResult(Status.FOUND, packing, nodes)
    if r == K.EXHAUSTED:
        return SearchResult(Status.EXHAUSTED, None, nodes)
    return SearchResult(Status.NOT_EXIST, None, nodes)


def find_disjoint_cycles(
    g: Graph,
    k: int,
    budget: int | None = None,
    *,
    mode: str = "exact",
    config: Config = DEFAULT_CONFIG,
) -> SearchResult:
    """Search for ``k`` vertex-disjoint cycles.

    ``mode="exact"`` runs the complete search only.  ``mode="heuristic"``
    first tries the greedy packing (good triangles grown by rotation, then
    triangles, then shortest cycles) and falls back to the exact search.
    ``NOT_EXIST`` is returned only after a complete exact search.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    budget = config.node_budget if budget is None else budget
    if k == 0:
        return SearchResult(Status.FOUND, CyclePacking(), 0)
    if mode not in ("exact", "heuristic"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "heuristic":
        p = greedy_cycle_packing(g, k)
        if len(p) >= k:
            p = CyclePacking.of(p.cycles[:k])
            if not verify_cycle_packing(g, p):
                raise AssertionError("greedy packing failed verification")
            return SearchResult(Status.FOUND, p, 0)
        if g.n > K.MAX_VERTICES:
            return SearchResult(Status.EXHAUSTED, None, 0)
    return exact_cycle_search(g, k, budget)


def maximum_cycle_packing(g: Graph, config: Config = DEFAULT_CONFIG) -> CyclePacking:
    """A maximum set of disjoint cycles (exact; respects ``exact_limit``)."""
    if g.n > config.exact_limit:
        raise ExactLimitError(f"|G|={g.n} exceeds the exact limit {config.exact_limit}")
    best = CyclePacking()
    lower = greedy_cycle_packing(g)
    if len(lower):
        best = lower
    for k in range(len(best) + 1, g.n // 3 + 1):
        r = exact_cycle_search(g, k, config.node_budget)
        if r.status is Status.EXHAUSTED:
            raise SearchExhausted(f"node budget exhausted while testing c(G) >= {k}")
        if r.status is Status.NOT_EXIST:
            break
        best = r.packing
    return best


def max_cycle_packing(g: Graph, config: Config = DEFAULT_CONFIG) -> int:
    """``c(G)``, the maximum number of disjoint cycles."""
    return len(maximum_cycle_packing(g, config))


# -- triangles ------------------------------------------------------------------

def filtered_triangles(g: Graph, filter: str = "all", k: int | None = None) -> list[tuple[int, int, int]]:
    """Triangles passing ``filter``.

    ``good``: contains a vertex of degree <= 2k-2.  ``lowdeg``: all three
    vertices have degree <= 2k.
    """
    tris = g.triangles()
    if filter == "all":
        return tris
    if filter not in ("good", "lowdeg"):
        raise ValueError(f"unknown triangle filter {filter!r}")
    if k is None or k < 2:
        raise ValueError(f"filter {filter!r} needs k >= 2")
    deg = g.degrees
    if filter == "good":
        return [t for t in tris if any(deg[v] <= 2 * k - 2 for v in t)]
    return [t for t in tris if all(deg[v] <= 2 * k for v in t)]


def greedy_triangles(tris: Iterable[tuple[int, int, int]], forbidden: int = 0) -> list[tuple[int, int, int]]:
    used = forbidden
    out = []
    for t in tris:
        m = to_mask(t)
        if not used & m:
            out.append(t)
            used |= m
    return out


def triangle_search(
    g: Graph, tris: list[tuple[int, int, int]], t: int, budget: int = DEFAULT_NODE_BUDGET
) -> tuple[int, list[tuple[int, int, int]] | None]:
    """Exact decision: can ``t`` disjoint triangles be chosen from ``tris``?"""
    if t <= 0:
        return K.FOUND, []
    _check_kernel_size(g)
    if len(tris) < t:
        return K.NOT_FOUND, None
    import numpy as np

    masks = [to_mask(tr) for tr in tris]
    inc: list[list[int]] = [[] for _ in range(g.n)]
    for j, tr in enumerate(tris):
        for v in tr:
            inc[v].append(j)
    ptr = [0]
    idx: list[int] = []
    for v in range(g.n):
        idx.extend(inc[v])
        ptr.append(len(idx))
    if K.USE_NUMBA:
        masks_a = np.array(masks, np.int64)
        ptr_a = np.array(ptr, np.int64)
        idx_a = np.array(idx, np.int64)
    else:
        masks_a, ptr_a, idx_a = masks, ptr, idx
    counter = K._scratch(2, 0)
    counter[1] = budget
    keys, vals = K.memo_tables(g.n)
    out = K._scratch(t, 0)
    r = K.search_triangles(masks_a, ptr_a, idx_a, g.all_mask, t, counter, keys, vals, out, 0)
    if r == K.FOUND:
        return r, [tris[int(j)] for j in out]
    return r, None


def max_triangle_packing(
    g: Graph, filter: str = "all", k: int | None = None, config: Config = DEFAULT_CONFIG
) -> TrianglePacking:
    """Maximum set of disjoint triangles passing ``filter`` (exact)."""
    if g.n > config.exact_limit:
        raise ExactLimitError(f"|G|={g.n} exceeds the exact limit {config.exact_limit}")
    tris = filtered_triangles(g, filter, k)
    best = greedy_triangles(tris)
    while len(best) < g.n // 3:
        r, found = triangle_search(g, tris, len(best) + 1, config.node_budget)
        if r == K.EXHAUSTED:
            raise SearchExhausted("node budget exhausted in triangle packing search")
        if r == K.NOT_FOUND:
            break
        best = found
    packing = TrianglePacking(tuple(sorted(best)))
    assert verify_triangle_packing(g, packing)
    return packing


def triangle_number(g: Graph, config: Config = DEFAULT_CONFIG) -> int:
    """``t(G)``."""
    return len(max_triangle_packing(g, "all", config=config))


# -- heuristic ------------------------------------------------------------------

def shortest_cycle(g: Graph, alive: int | None = None) -> list[int] | None:
    """A shortest cycle in the subgraph induced by ``alive`` (lowest root wins ties)."""
    alive = g.all_mask if alive is None else alive
    best: list[int] | None = None
    for r in bits(alive):
        if not (g.rows[r] & alive):
            continue
        parent = {r: -1}
        dist = {r: 0}
        queue = deque([r])
        found = None
        while queue and found is None:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= len(best):
                break
            for w in bits(g.rows[u] & alive):
                if w == parent[u]:
                    continue
                if w in dist:
                    pu = _path_to_root(parent, u)
                    pw = _path_to_root(parent, w)
                    if set(pu[:-1]).isdisjoint(pw[:-1]):
                        found = pu[::-1] + pw[:-1]
                        break
                    continue
                parent[w] = u
                dist[w] = dist[u] + 1
                queue.append(w)
        if found is not None and (best is None or len(found) < len(best)):
            best = found
            if len(best) == 3:
                break
    return best


def _path_to_root(parent: dict[int, int], v: int) -> list[int]:
    out = [v]
    while parent[v] != -1:
        v = parent[v]
        out.append(v)
    return out


def greedy_cycle_packing(g: Graph, k: int | None = None) -> CyclePacking:
    """Greedy disjoint cycles: good triangles, other triangles, shortest cycles.

    Stops once ``k`` cycles are collected (when ``k`` is given).
    """
    from .augment import grow_good_packing

    cycles: list[tuple[int, ...]] = []
    used = 0
    if k is not None and k >= 2:
        good = grow_good_packing(g, k)
        cycles.extend(good.triangles)
        used = good.mask
    for t in greedy_triangles(g.triangles(), forbidden=used):
        if k is not None and len(cycles) >= k:
            break
        cycles.append(t)
        used |= to_mask(t)
    while k is None or len(cycles) < k:
        c = shortest_cycle(g, g.all_mask & ~used)
        if c is None:
            break
        cycles.append(tuple(c))
        used |= to_mask(c)
    return CyclePacking.of(cycles)


def remove_packing(g: Graph, p: CyclePacking) -> tuple[Graph, dict[int, int]]:
    return delete_vertices(g, p.vertices)
