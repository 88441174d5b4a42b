"""Generators for the sharpness constructions and exceptional graphs.

Vertex numbering is fixed per family (golden files depend on it):

* ``clique_minus(k, n)``: K_n minus the edges of K_{n-2k+1}; the independent
  part is ``0..n-2k``, the remaining ``2k-1`` vertices follow.
* ``g0(k)``: K_{3k-1} on ``0..3k-2`` with ``S = {0..k-1}`` made independent,
  plus ``x = 3k-1`` adjacent to ``S``.
* ``g1(k)``: ``g0(k)`` plus leaves ``3k..4k-1`` attached to ``x``.
* ``bipartite_sharp(k, n)``: K_{n-2k+1, 2k-1}, large side first.
* ``kky_exception(k)``: two copies of K_k on ``0..k-1`` and ``k..2k-1``, joined
  to the independent set ``2k..3k-1``.
* ``wheel(n)``: hub ``0`` and rim cycle ``1..n-1``.
* ``sk(m)``: K_m on ``0..m-1`` with edge ``0-1`` subdivided by vertex ``m``.
* ``complete(n)``, ``complete_bipartite(n, m)``, ``cycle(n)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import h_minus_ell, sk_graph
from .graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    join,
)

FAMILIES = (
    "clique_minus",
    "g0",
    "g1",
    "bipartite_sharp",
    "kky_exception",
    "wheel",
    "sk",
    "complete",
    "complete_bipartite",
    "cycle",
)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    k: int | None = None
    n: int | None = None
    m: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")


@dataclass(frozen=True)
class ExpectedProfile:
    n: int
    h_minus_ell: int
    c_exact: int | None
    k: int
    notes: str = ""


def _need(value, name, family):
    if value is None:
        raise ValueError(f"family {family} needs {name}")
    return value


def _validate(spec: FamilySpec) -> None:
    f, k, n, m = spec.family, spec.k, spec.n, spec.m
    if f in ("clique_minus", "g0", "g1", "bipartite_sharp", "kky_exception"):
        if _need(k, "k", f) < 2:
            raise ValueError("k must be >= 2")
    if f == "clique_minus" and _need(n, "n", f) < 3 * k:
        raise ValueError("clique_minus needs n >= 3k")
    if f == "bipartite_sharp" and _need(n, "n", f) < 4 * k:
        raise ValueError("bipartite_sharp needs n >= 4k")
    if f == "wheel" and _need(n, "n", f) < 4:
        raise ValueError("wheel needs n >= 4")
    if f == "sk" and _need(m, "m", f) < 3:
        raise ValueError("sk needs m >= 3")
    if f == "complete" and _need(n, "n", f) < 0:
        raise ValueError("n must be >= 0")
    if f == "cycle" and _need(n, "n", f) < 3:
        raise ValueError("cycle needs n >= 3")
    if f == "complete_bipartite" and (_need(n, "n", f) < 0 or _need(m, "m", f) < 0):
        raise ValueError("sides must be >= 0")


def g0(k: int) -> Graph:
    size = 3 * k - 1
    rows = list(complete_graph(size).rows) + [0]
    s_mask = (1 << k) - 1
    x = size
    for v in range(k):
        rows[v] = (rows[v] & ~s_mask) | (1 << x)
    rows[x] = s_mask
    return Graph(size + 1, tuple(rows))


def g1(k: int) -> Graph:
    base = g0(k)
    x = 3 * k - 1
    rows = list(base.rows) + [1 << x] * k
    rows[x] |= ((1 << k) - 1) << (3 * k)
    return Graph(4 * k, tuple(rows))


def clique_minus(k: int, n: int) -> Graph:
    ind = n - 2 * k + 1
    return join(empty_graph(ind), complete_graph(2 * k - 1))


def wheel(n: int) -> Graph:
    return join(empty_graph(1), cycle_graph(n - 1))


def kky_exception(k: int) -> Graph:
    return join(disjoint_union(complete_graph(k), complete_graph(k)), empty_graph(k))


def generate(spec: FamilySpec) -> Graph:
    _validate(spec)
    f, k, n, m = spec.family, spec.k, spec.n, spec.m
    if f == "clique_minus":
        return clique_minus(k, n)
    if f == "g0":
        return g0(k)
    if f == "g1":
        return g1(k)
    if f == "bipartite_sharp":
        return complete_bipartite(n - 2 * k + 1, 2 * k - 1)
    if f == "kky_exception":
        return kky_exception(k)
    if f == "wheel":
        return wheel(n)
    if f == "sk":
        return sk_graph(m)
    if f == "complete":
        return complete_graph(n)
    if f == "complete_bipartite":
        return complete_bipartite(n, m)
    return cycle_graph(n)


def expected_profile(spec: FamilySpec) -> ExpectedProfile:
    """Order, ``h - ell`` and ``c(G)`` each family is known to have.

    Families without a ``k`` are profiled at ``k = spec.k or 2``.
    """
    _validate(spec)
    f, n, m = spec.family, spec.n, spec.m
    k = spec.k if spec.k is not None else 2
    if f == "g0":
        return ExpectedProfile(3 * k, 3 * k - 2, k - 1, k, "x lies in no triangle")
    if f == "g1":
        return ExpectedProfile(4 * k, 2 * k, k - 1, k, "g0 plus k leaves on x")
    if f == "clique_minus":
        return ExpectedProfile(n, 2 * k - 1, k - 1, k, "min degree 2k-1")
    if f == "bipartite_sharp":
        return ExpectedProfile(n, 2 * k - 1, k - 1, k, "every cycle uses two small-side vertices")
    if f == "kky_exception":
        # clique vertices have degree 2k-1, independent ones 2k
        c = k - 1 if k % 2 == 1 else None
        return ExpectedProfile(3 * k, k, c, k, "exceptional for odd k")
    if f == "wheel":
        degs = [n - 1] + [3] * (n - 1)
        return ExpectedProfile(n, h_minus_ell(degs, k), 1, k, "every cycle but the rim uses the hub")
    if f == "sk":
        degs = [m - 1] * m + [2]
        return ExpectedProfile(m + 1, h_minus_ell(degs, k), max(1, m // 3), k, "subdivided clique")
    if f == "complete":
        return ExpectedProfile(n, h_minus_ell([n - 1] * n, k), n // 3, k)
    if f == "complete_bipartite":
        degs = [m] * n + [n] * m
        return ExpectedProfile(n + m, h_minus_ell(degs, k), min(n // 2, m // 2), k)
    return ExpectedProfile(n, h_minus_ell([2] * n, k), 1, k)
