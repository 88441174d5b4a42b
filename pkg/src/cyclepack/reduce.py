"""Instance-shrinking rewrite rules with certificate lifting.

A state carries ``(G, k, i)``.  The rules, tried in this order, are:

``R1_ISOLATED``
    delete an isolated vertex; ``i -= 1``.
``F3_LEAVES``
    ``v`` of degree ``2k-1`` or ``2k`` with at least three leaves, or with two
    leaves and degree ``2k-1``: delete those leaves;
    ``i -= |X| - 1 - [d(v) = 2k]``.
``R3_SPECIAL_EDGE``
    delete an edge with both ends low or of degree >= 2k+1; ``(k, i)`` kept.
``R4_CONTRACT``
    a low ``x`` with ``d(x) >= 2`` and an edge ``xy`` in no triangle:
    contract ``xy``; ``i -= 1``.
``R5_TRIANGLES``
    a packing ``T`` of good triangles with fewer than two outside vertices
    having ``>= 2|T| + 1`` neighbours in it, and ``k - |T| >= 2``: delete
    its vertices; ``k -= |T|``, ``i -= |T|``.

Whenever ``|G| >= 16k + 3i`` and ``h >= ell + 3k - i`` hold before a rule, they
hold after it, and ``(k, i, |G| + ||G||)`` strictly decreases.  Packings of the
reduced graph lift back to the original graph.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from .augment import attachment_heavy_vertices, grow_good_packing
from .classify import Hypothesis, check_hypothesis
from .graph import Graph, bits, contract_edge, delete_edge, delete_vertices, to_mask
from .packing import (
    Config,
    CyclePacking,
    DEFAULT_CONFIG,
    SearchResult,
    Status,
    filtered_triangles,
    find_disjoint_cycles,
    verify_cycle_packing,
)

RULES = ("R1_ISOLATED", "F3_LEAVES", "R3_SPECIAL_EDGE", "R4_CONTRACT", "R5_TRIANGLES")


@dataclass(frozen=True)
class ReductionRecord:
    rule: str
    params: dict
    mapping: dict[int, int]
    dk: int
    di: int
    k: int
    i: int
    n: int
    m: int

    def describe(self) -> str:
        parts = []
        for key, val in self.params.items():
            if isinstance(val, (list, tuple)):
                val = "(" + ",".join(
                    "(" + ",".join(map(str, x)) + ")" if isinstance(x, (list, tuple)) else str(x)
                    for x in val
                ) + ")"
            parts.append(f"{key}={val}")
        return f"{self.rule} {' '.join(parts)} k={self.k} i={self.i} n={self.n} m={self.m}"


@dataclass(frozen=True)
class ReductionTrace:
    original: Graph
    records: tuple[ReductionRecord, ...] = ()

    def __len__(self) -> int:
        return len(self.records)

    def triangles_removed(self) -> int:
        return sum(len(r.params["triangles"]) for r in self.records if r.rule == "R5_TRIANGLES")


@dataclass(frozen=True)
class ReductionState:
    g: Graph
    k: int
    i: int
    trace: ReductionTrace = None
    stuck: bool = False

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if self.i > self.k:
            raise ValueError("i must be <= k")
        if self.trace is None:
            object.__setattr__(self, "trace", ReductionTrace(self.g))

    @property
    def sigma(self) -> tuple[int, int, int]:
        return (self.k, self.i, self.g.n + self.g.m)

    def hypothesis_holds(self) -> bool:
        return check_hypothesis(self.g, Hypothesis.INDUCT, self.k, self.i).holds


def _record(st: ReductionState, rule: str, params: dict, g: Graph, mapping, dk: int, di: int) -> ReductionState:
    k, i = st.k + dk, st.i + di
    rec = ReductionRecord(rule, params, dict(mapping), dk, di, k, i, g.n, g.m)
    trace = ReductionTrace(st.trace.original, st.trace.records + (rec,))
    return ReductionState(g, k, i, trace)


def _identity(n: int) -> dict[int, int]:
    return {v: v for v in range(n)}


def _rule_r1(st: ReductionState) -> ReductionState | None:
    g = st.g
    for v in range(g.n):
        if g.rows[v] == 0:
            h, mapping = delete_vertices(g, [v])
            return _record(st, "R1_ISOLATED", {"vertex": v}, h, mapping, 0, -1)
    return None


def _rule_f3(st: ReductionState) -> ReductionState | None:
    g, k = st.g, st.k
    deg = g.degrees
    leaves = to_mask(v for v in range(g.n) if deg[v] == 1)
    if not leaves:
        return None
    for v in range(g.n):
        d = deg[v]
        if d not in (2 * k - 1, 2 * k):
            continue
        X = bits(g.rows[v] & leaves)
        if len(X) >= 3 or (len(X) == 2 and d == 2 * k - 1):
            h, mapping = delete_vertices(g, X)
            di = -(len(X) - 1 - (1 if d == 2 * k else 0))
            return _record(st, "F3_LEAVES", {"center": v, "leaves": tuple(X)}, h, mapping, 0, di)
    return None


def _special_mask(g: Graph, k: int) -> int:
    return to_mask(v for v, d in enumerate(g.degrees) if d <= 2 * k - 2 or d >= 2 * k + 1)


def _rule_r3(st: ReductionState) -> ReductionState | None:
    g = st.g
    special = _special_mask(g, st.k)
    for u in bits(special):
        later = g.rows[u] & special & ~((2 << u) - 1)
        if later:
            v = (later & -later).bit_length() - 1
            return _record(st, "R3_SPECIAL_EDGE", {"edge": (u, v)}, delete_edge(g, u, v),
                           _identity(g.n), 0, 0)
    return None


def _rule_r4(st: ReductionState) -> ReductionState | None:
    g, k = st.g, st.k
    deg = g.degrees
    for x in range(g.n):
        if deg[x] > 2 * k - 2 or deg[x] < 2:
            continue
        for y in bits(g.rows[x]):
            if not g.rows[x] & g.rows[y]:
                c = contract_edge(g, x, y)
                return _record(st, "R4_CONTRACT", {"x": x, "y": y, "merged": c.vertex},
                               c.graph, c.mapping, 0, -1)
    return None


def _r5_candidates(st: ReductionState, config: Config):
    """Single good triangles in lexicographic order, then a grown good packing."""
    g, k = st.g, st.k
    good = filtered_triangles(g, "good", k)
    for t in good:
        yield (t,)
    if k >= 4 and good:
        grown = grow_good_packing(g, k, config=config)
        if len(grown) >= 2:
            yield grown.triangles


def _rule_r5(st: ReductionState, config: Config = DEFAULT_CONFIG) -> ReductionState | None:
    g, k = st.g, st.k
    for tris in _r5_candidates(st, config):
        size = len(tris)
        if k - size < 2:
            continue
        X = [v for t in tris for v in t]
        heavy = attachment_heavy_vertices(g, X, size)
        if len(heavy) < 2:
            h, mapping = delete_vertices(g, X)
            return _record(st, "R5_TRIANGLES", {"triangles": tuple(tris)}, h, mapping, -size, -size)
    return None


_RULE_FUNCS: dict[str, Callable] = {
    "R1_ISOLATED": _rule_r1,
    "F3_LEAVES": _rule_f3,
    "R3_SPECIAL_EDGE": _rule_r3,
    "R4_CONTRACT": _rule_r4,
    "R5_TRIANGLES": _rule_r5,
}


def apply_rule(st: ReductionState, rule: str, config: Config = DEFAULT_CONFIG) -> ReductionState | None:
    """Apply ``rule`` once if it is applicable, else return ``None``.

    Refuses (returns ``None``) when the rule would push ``i`` below ``-3k``.
    """
    if rule not in _RULE_FUNCS:
        raise ValueError(f"unknown rule {rule!r}")
    fn = _RULE_FUNCS[rule]
    new = fn(st, config) if rule == "R5_TRIANGLES" else fn(st)
    if new is None:
        return None
    if new.i < -3 * new.k:
        return None
    if not new.sigma < st.sigma:
        raise AssertionError(f"{rule} did not decrease sigma: {st.sigma} -> {new.sigma}")
    return new


def reduce_step(st: ReductionState, config: Config = DEFAULT_CONFIG) -> ReductionState | None:
    """Apply the first applicable rule, or return ``None`` (no rule applies)."""
    for rule in RULES:
        new = apply_rule(st, rule, config)
        if new is not None:
            return new
    return None


def _would_underflow(st: ReductionState, config: Config) -> bool:
    for rule in RULES:
        fn = _RULE_FUNCS[rule]
        new = fn(st, config) if rule == "R5_TRIANGLES" else fn(st)
        if new is not None and new.i < -3 * new.k:
            return True
    return False


def reduce_fully(st: ReductionState, max_steps: int | None = None,
                 config: Config = DEFAULT_CONFIG) -> ReductionState:
    """Apply rules until none applies or ``max_steps`` is reached."""
    steps = 0
    while max_steps is None or steps < max_steps:
        new = reduce_step(st, config)
        if new is None:
            if _would_underflow(st, config):
                st = replace(st, stuck=True)
            return st
        st = new
        steps += 1
    return st


def minimality_diagnostics(st: ReductionState) -> dict[str, bool]:
    """Properties a minimal counterexample would have that are not rewrite rules."""
    g, k = st.g, st.k
    attach_ok = True
    for t in filtered_triangles(g, "good", k):
        if len(attachment_heavy_vertices(g, t, 1)) < 2:
            attach_ok = False
            break
    return {"k_at_least_3": k >= 3, "single_triangle_attachment": attach_ok}


# -- lifting ----------------------------------------------------------------------

def _lift_contracted_cycle(g: Graph, cycle: list[int], x: int, y: int) -> list[int]:
    """Expand the merged vertex (already written as ``-1``) in a lifted cycle."""
    pos = cycle.index(-1)
    a = cycle[pos - 1]
    b = cycle[(pos + 1) % len(cycle)]
    for candidate in ([x], [y], [x, y], [y, x]):
        first, last = candidate[0], candidate[-1]
        if g.has_edge(a, first) and g.has_edge(last, b):
            return cycle[:pos] + candidate + cycle[pos + 1:]
    raise AssertionError(f"cannot expand contracted vertex between {a} and {b}")


def lift_packing(trace: ReductionTrace, p: CyclePacking) -> CyclePacking:
    """Map a packing of the fully reduced graph back to ``trace.original``."""
    current = _replay(trace)
    if not verify_cycle_packing(current[-1], p):
        raise ValueError("packing is not valid in the reduced graph")
    cycles = [list(c) for c in p.cycles]
    for idx in range(len(trace.records) - 1, -1, -1):
        rec = trace.records[idx]
        before = current[idx]
        inverse: dict[int, int] = {}
        for old, new in rec.mapping.items():
            inverse.setdefault(new, old)
        if rec.rule == "R4_CONTRACT":
            x, y, merged = rec.params["x"], rec.params["y"], rec.params["merged"]
            lifted = []
            for c in cycles:
                if merged in c:
                    c = [(-1 if v == merged else inverse[v]) for v in c]
                    c = _lift_contracted_cycle(before, c, x, y)
                else:
                    c = [inverse[v] for v in c]
                lifted.append(c)
            cycles = lifted
        else:
            cycles = [[inverse[v] for v in c] for c in cycles]
            if rec.rule == "R5_TRIANGLES":
                cycles.extend(list(t) for t in rec.params["triangles"])
        if not verify_cycle_packing(before, cycles):
            raise AssertionError(f"lifting through {rec.rule} produced an invalid packing")
    return CyclePacking.of(cycles)


def _replay(trace: ReductionTrace) -> list[Graph]:
    """Graphs before each record, plus the final graph."""
    g = trace.original
    out = [g]
    for rec in trace.records:
        g = _apply_record(g, rec)
        out.append(g)
    return out


def _apply_record(g: Graph, rec: ReductionRecord) -> Graph:
    p = rec.params
    if rec.rule == "R1_ISOLATED":
        return delete_vertices(g, [p["vertex"]])[0]
    if rec.rule == "F3_LEAVES":
        return delete_vertices(g, p["leaves"])[0]
    if rec.rule == "R3_SPECIAL_EDGE":
        return delete_edge(g, *p["edge"])
    if rec.rule == "R4_CONTRACT":
        return contract_edge(g, p["x"], p["y"]).graph
    return delete_vertices(g, [v for t in p["triangles"] for v in t])[0]


def replay(trace: ReductionTrace) -> Graph:
    """Re-apply every record to the original graph."""
    return _replay(trace)[-1]


# -- pipeline ---------------------------------------------------------------------

def solve_with_reduction(
    g: Graph,
    k: int,
    *,
    i: int | None = None,
    budget: int | None = None,
    config: Config = DEFAULT_CONFIG,
) -> SearchResult:
    """Reduce, search the reduced instance (heuristic then exact), lift.

    A negative answer on the reduced graph is never trusted: the search is
    then repeated on the original graph, so ``NOT_EXIST`` always comes from a
    complete search of ``g`` itself.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    budget = config.node_budget if budget is None else budget
    st = reduce_fully(ReductionState(g, k, k if i is None else i), config=config)
    if st.trace.records:
        r = find_disjoint_cycles(st.g, st.k, budget, mode="heuristic", config=config)
        if r.found:
            lifted = lift_packing(st.trace, r.packing)
            lifted = CyclePacking.of(lifted.cycles[:k])
            if not verify_cycle_packing(g, lifted) or len(lifted) < k:
                raise AssertionError("lifted packing failed verification")
            return SearchResult(Status.FOUND, lifted, r.nodes)
    return find_disjoint_cycles(g, k, budget, mode="heuristic", config=config)
