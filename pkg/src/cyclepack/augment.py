"""Growing packings of good triangles by rotating along the attachment digraph.

A triangle is *good* when it contains a low vertex (degree <= 2k-2).  Given a
packing ``S``, the attachment digraph has an arc ``C -> D`` whenever some
vertex of ``C`` is adjacent to all three vertices of ``D``.  If a low vertex
``x`` outside ``S`` forms a triangle ``xyz`` with ``y`` outside ``S`` and
``z`` in ``C``, and an outside vertex ``w`` sees all of some ``D`` from which
``C`` is reachable, then shifting one vertex along the ``D -> C`` path frees
``z`` and the packing grows by one.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .graph import Graph, bits, to_mask
from .packing import (
    Config,
    DEFAULT_CONFIG,
    TrianglePacking,
    filtered_triangles,
    greedy_triangles,
    max_triangle_packing,
    verify_triangle_packing,
)

log = logging.getLogger(__name__)


class RotationError(ValueError):
    """A rotation plan does not satisfy its preconditions."""


@dataclass(frozen=True)
class AuxDigraph:
    nodes: tuple[int, ...]
    arcs: frozenset[tuple[int, int]]
    witness: dict[tuple[int, int], int]

    def successors(self, c: int) -> list[int]:
        return sorted(d for (a, d) in self.arcs if a == c)

    def predecessors(self, d: int) -> list[int]:
        return sorted(c for (c, b) in self.arcs if b == d)


@dataclass(frozen=True)
class RotationPlan:
    """Rotate along ``path`` (``path[0]`` = D, ``path[-1]`` = C).

    ``pivots[i]`` lies in ``path[i]`` and sees all of ``path[i + 1]``;
    ``w`` sees all of D; ``triangle = (x, y, z)`` with ``z`` in C.
    """

    path: tuple[int, ...]
    pivots: tuple[int, ...]
    w: int
    triangle: tuple[int, int, int]


def build_aux_digraph(g: Graph, S: TrianglePacking) -> AuxDigraph:
    if not verify_triangle_packing(g, S):
        raise ValueError("S is not a packing of disjoint triangles in g")
    tri_masks = [to_mask(t) for t in S.triangles]
    arcs = set()
    witness = {}
    for ci, c in enumerate(S.triangles):
        for di, dmask in enumerate(tri_masks):
            if ci == di:
                continue
            for v in sorted(c):
                if g.rows[v] & dmask == dmask:
                    arcs.add((ci, di))
                    witness[(ci, di)] = v
                    break
    return AuxDigraph(tuple(range(len(S))), frozenset(arcs), witness)


def reachable_sources(H: AuxDigraph, C: int) -> set[int]:
    """All triangles with a directed path to ``C`` (``C`` included)."""
    if C not in H.nodes:
        raise ValueError(f"{C} is not a node of the digraph")
    seen = {C}
    queue = deque([C])
    while queue:
        d = queue.popleft()
        for c in H.predecessors(d):
            if c not in seen:
                seen.add(c)
                queue.append(c)
    return seen


def _path_to(H: AuxDigraph, C: int) -> dict[int, list[int]]:
    """Shortest path from every source to ``C`` (BFS on reversed arcs)."""
    paths = {C: [C]}
    queue = deque([C])
    while queue:
        d = queue.popleft()
        for c in H.predecessors(d):
            if c not in paths:
                paths[c] = [c] + paths[d]
                queue.append(c)
    return paths


def attachment_heavy_vertices(g: Graph, X, t: int) -> frozenset[int]:
    """Vertices outside ``X`` with at least ``2t + 1`` neighbours in ``X``."""
    xmask = to_mask(X)
    if xmask.bit_count() != 3 * t:
        raise ValueError(f"|X| = {xmask.bit_count()} but 3t = {3 * t}")
    return frozenset(
        v for v in range(g.n)
        if not xmask >> v & 1 and (g.rows[v] & xmask).bit_count() >= 2 * t + 1
    )


def _check_plan(g: Graph, S: TrianglePacking, plan: RotationPlan, k: int | None) -> None:
    tris = S.triangles
    path = plan.path
    if not path:
        raise RotationError("empty path")
    if len(set(path)) != len(path) or any(not 0 <= c < len(tris) for c in path):
        raise RotationError(f"path {path} is not a simple path of triangle ids")
    if len(plan.pivots) != len(path) - 1:
        raise RotationError("need exactly one pivot per arc of the path")
    x, y, z = plan.triangle
    w = plan.w
    union = S.mask
    for i, piv in enumerate(plan.pivots):
        if piv not in tris[path[i]]:
            raise RotationError(f"pivot {piv} is not in triangle {tris[path[i]]}")
        nxt = to_mask(tris[path[i + 1]])
        if g.rows[piv] & nxt != nxt:
            raise RotationError(f"pivot {piv} does not see all of {tris[path[i + 1]]}")
    d_mask = to_mask(tris[path[0]])
    if not 0 <= w < g.n or g.rows[w] & d_mask != d_mask:
        raise RotationError(f"w={w} does not see all of {tris[path[0]]}")
    if union >> w & 1 or w in (x, y):
        raise RotationError(f"w={w} must lie outside the packing and differ from x, y")
    if not g.is_triangle(x, y, z):
        raise RotationError(f"{plan.triangle} is not a triangle")
    if union >> x & 1 or union >> y & 1:
        raise RotationError("x and y must lie outside the packing")
    if z not in tris[path[-1]]:
        raise RotationError(f"z={z} is not in triangle {tris[path[-1]]}")
    if k is not None and g.degree(x) > 2 * k - 2:
        raise RotationError(f"x={x} is not low for k={k}")


def rotate_augment(g: Graph, S: TrianglePacking, plan: RotationPlan, k: int | None = None) -> TrianglePacking:
    """Apply ``plan`` and return a packing with one more triangle.

    Rotated triangles keep their position; ``xyz`` is appended.  When ``k``
    is given, ``x`` must be low.
    """
    if not verify_triangle_packing(g, S):
        raise RotationError("S is not a packing of disjoint triangles in g")
    _check_plan(g, S, plan, k)
    tris = [set(t) for t in S.triangles]
    path, piv = plan.path, plan.pivots
    x, y, z = plan.triangle
    j = len(path)
    if j == 1:
        tris[path[0]] = (tris[path[0]] - {z}) | {plan.w}
    else:
        new = {}
        new[path[0]] = (tris[path[0]] - {piv[0]}) | {plan.w}
        for i in range(1, j - 1):
            new[path[i]] = (tris[path[i]] - {piv[i]}) | {piv[i - 1]}
        new[path[-1]] = (tris[path[-1]] - {z}) | {piv[-1]}
        for c, t in new.items():
            tris[c] = t
    out = [tuple(sorted(t)) for t in tris] + [tuple(sorted((x, y, z)))]
    result = TrianglePacking(tuple(out))
    for c in path:
        if len(set(result.triangles[c]) & set(S.triangles[c])) != 2:
            raise AssertionError(f"rotation moved more than one vertex of triangle {c}")
    if not verify_triangle_packing(g, result):
        bad = next(
            (t for t in result.triangles if not g.is_triangle(*t)), result.triangles[-1]
        )
        raise RotationError(f"rotation produced an invalid triple {bad}")
    return result


def rotation_plans(g: Graph, S: TrianglePacking, k: int) -> Iterator[RotationPlan]:
    """Applicable rotation plans, shortest paths first within each ``(x, y, z)``.

    ``(x, y, z)`` is scanned in increasing order; for each, sources ``D`` are
    taken by path length then id, and ``w`` is the lowest outside vertex
    seeing all of ``D``.
    """
    if not S.triangles:
        return
    H = build_aux_digraph(g, S)
    union = S.mask
    owner = {v: ci for ci, t in enumerate(S.triangles) for v in t}
    deg = g.degrees
    path_cache: dict[int, dict[int, list[int]]] = {}
    for x in range(g.n):
        if union >> x & 1 or deg[x] > 2 * k - 2:
            continue
        for y in bits(g.rows[x] & ~union):
            for z in bits(g.rows[x] & g.rows[y] & union):
                C = owner[z]
                if C not in path_cache:
                    path_cache[C] = _path_to(H, C)
                paths = path_cache[C]
                for D in sorted(paths, key=lambda d: (len(paths[d]), d)):
                    ws = [
                        w for w in bits(g.common_neighbors(S.triangles[D]) & ~union)
                        if w not in (x, y)
                    ]
                    if not ws:
                        continue
                    path = paths[D]
                    pivots = tuple(H.witness[(path[i], path[i + 1])] for i in range(len(path) - 1))
                    yield RotationPlan(tuple(path), pivots, ws[0], (x, y, z))


def _all_good(g: Graph, P: TrianglePacking, k: int) -> bool:
    low = 2 * k - 2
    return all(any(g.degree(v) <= low for v in t) for t in P.triangles)


def grow_good_packing(g: Graph, k: int, *, exact: bool = False, config: Config = DEFAULT_CONFIG) -> TrianglePacking:
    """A packing of good triangles that no single rotation can enlarge.

    Greedy in lexicographic order, then repeatedly applies the first rotation
    whose output is still all-good.  With ``exact=True`` the maximum good
    packing is computed by complete search instead.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if exact:
        return max_triangle_packing(g, "good", k, config)
    good = filtered_triangles(g, "good", k)
    S = TrianglePacking(tuple(greedy_triangles(good)))
    while True:
        extra = greedy_triangles(good, forbidden=S.mask)
        if extra:
            S = TrianglePacking(S.triangles + tuple(extra))
        for plan in rotation_plans(g, S, k):
            candidate = rotate_augment(g, S, plan)
            if _all_good(g, candidate, k):
                S = candidate
                break
            log.debug("rotation %s loses goodness; skipped", plan)
        else:
            return S
