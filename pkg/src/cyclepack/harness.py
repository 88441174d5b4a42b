"""Theorem verification over labelled graphs.

Work is split into fixed-size shards that do not depend on the number of
workers.  Random shards draw from ``SeedSequence(seed, spawn_key=(shard,))``,
so a report depends only on ``(theorem, k, i, spec)``.
"""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterator

import numpy as np

from . import _kernels as K
from .classify import Hypothesis, check_hypothesis, h_minus_ell, required_cycles
from .graph import Graph, parse_edge_list
from .packing import Config, DEFAULT_CONFIG, Status, exact_cycle_search, find_disjoint_cycles
from .reduce import solve_with_reduction

log = logging.getLogger(__name__)

EXHAUSTIVE_MAX_N = 7
EXHAUSTIVE_SHARD = 1 << 16
RANDOM_SHARD = 64
MODES = ("exhaustive", "random", "targeted")


@dataclass(frozen=True)
class EnumerationSpec:
    """Which graphs to test.

    ``exhaustive`` walks every labelled graph for each ``n`` in
    ``[n_min, n_max]`` in edge-mask order.  ``random`` draws ``count`` graphs
    G(n, p) (``p`` uniform in (0, 1) when not given).  ``targeted`` starts
    sparse and flips edges toward ``h_k - ell_k >= target``.
    """

    n_min: int
    n_max: int | None = None
    mode: str = "exhaustive"
    count: int = 0
    p: float | None = None
    target: int | None = None
    seed: int = 0
    max_exhaustive_n: int = EXHAUSTIVE_MAX_N

    def __post_init__(self):
        if self.n_max is None:
            object.__setattr__(self, "n_max", self.n_min)
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.n_min < 0:
            raise ValueError("n_min must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.mode == "exhaustive" and self.n_max > self.max_exhaustive_n:
            raise ValueError(
                f"n={self.n_max} is too large for exhaustive enumeration "
                f"(limit {self.max_exhaustive_n}); use random or targeted mode"
            )
        if self.mode != "exhaustive" and self.count < 0:
            raise ValueError("count must be >= 0")
        if self.p is not None and not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")

    @property
    def n_values(self) -> range:
        return range(self.n_min, self.n_max + 1)


@dataclass
class VerificationReport:
    theorem: str
    k: int
    i: int | None
    spec: dict
    graphs_tested: int = 0
    hypothesis_count: int = 0
    solved: int = 0
    undecided: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    def merge(self, part: dict) -> None:
        self.graphs_tested += part["graphs_tested"]
        self.hypothesis_count += part["hypothesis_count"]
        self.solved += part["solved"]
        self.undecided += part["undecided"]
        self.counterexamples.extend(part["counterexamples"])

    def to_json(self) -> dict:
        """Deterministic content (wall time is left out on purpose)."""
        return {
            "theorem": self.theorem,
            "k": self.k,
            "i": self.i,
            "spec": self.spec,
            "graphs_tested": self.graphs_tested,
            "hypothesis_count": self.hypothesis_count,
            "solved": self.solved,
            "undecided": self.undecided,
            "counterexamples": self.counterexamples,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


# -- sampling -----------------------------------------------------------------------

def _status(d: int, k: int) -> int:
    if d >= 2 * k:
        return 1
    if d <= 2 * k - 2:
        return -1
    return 0


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    if n < 2:
        return Graph(n, (0,) * n)
    pu, pv = K.pair_arrays(n)
    keep = rng.random(len(pu)) < p
    rows = [0] * n
    for u, v in zip(pu[keep].tolist(), pv[keep].tolist()):
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def targeted_graph(rng: np.random.Generator, n: int, k: int, target: int,
                   max_flips: int | None = None) -> Graph:
    """Hill-climb edge flips from a sparse random graph until ``h - ell >= target``.

    Flips that do not lower ``h - ell`` are accepted; after ``max_flips``
    proposals, edges are added at non-high vertices until the target is met
    (always possible when ``target <= n`` and ``n >= 2k + 1``).
    """
    if target > n or n < 2 * k + 1:
        raise ValueError(f"target {target} unreachable on {n} vertices for k={k}")
    mean_degree = rng.uniform(0.5, 2 * k + 1)
    g = random_graph(rng, n, min(1.0, mean_degree / max(n - 1, 1)))
    rows = list(g.rows)
    deg = [r.bit_count() for r in rows]
    score = sum(_status(d, k) for d in deg)
    max_flips = 20 * n if max_flips is None else max_flips
    flips = 0
    while score < target and flips < max_flips:
        flips += 1
        u = int(rng.integers(n))
        if rng.random() < 0.5:
            near = [w for w in range(n) if 2 * k - 2 <= deg[w] <= 2 * k - 1]
            if near:
                u = near[int(rng.integers(len(near)))]
        v = int(rng.integers(n - 1))
        if v >= u:
            v += 1
        step = -1 if rows[u] >> v & 1 else 1
        delta = (_status(deg[u] + step, k) - _status(deg[u], k)
                 + _status(deg[v] + step, k) - _status(deg[v], k))
        if delta < 0:
            continue
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
        deg[u] += step
        deg[v] += step
        score += delta
    while score < target:
        cands = [w for w in range(n) if deg[w] < 2 * k and deg[w] < n - 1]
        u = max(cands, key=lambda w: (deg[w], -w))
        free = [w for w in range(n) if w != u and not rows[u] >> w & 1]
        v = free[int(rng.integers(len(free)))]
        delta = (_status(deg[u] + 1, k) - _status(deg[u], k)
                 + _status(deg[v] + 1, k) - _status(deg[v], k))
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        deg[u] += 1
        deg[v] += 1
        score += delta
    return Graph(n, tuple(rows))


def default_target(hyp: Hypothesis, k: int, i: int | None = None) -> int:
    """``h - ell`` threshold the targeted sampler aims for."""
    return {
        Hypothesis.CH: 2 * k,
        Hypothesis.DE: k * k + 2 * k - 4,
        Hypothesis.H3K: 3 * k,
        Hypothesis.MAIN2K: 2 * k,
        Hypothesis.INDUCT: 3 * k - (i if i is not None else k),
        Hypothesis.T2KPLUST: 2 * k + 1,
        Hypothesis.COR9: 2 * k,
        Hypothesis.ONETRI: 2 * k,
        Hypothesis.LEM10: 4,
    }[hyp]


def _shard_rng(seed: int, shard: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(shard,)))


def _sample(spec: EnumerationSpec, rng: np.random.Generator, k: int, target: int | None) -> Graph:
    n = int(rng.integers(spec.n_min, spec.n_max + 1))
    if spec.mode == "random":
        p = spec.p if spec.p is not None else float(rng.random())
        return random_graph(rng, n, p)
    t = spec.target if spec.target is not None else target
    if t is None:
        raise ValueError("targeted mode needs a target")
    return targeted_graph(rng, n, k, t)


def _shards(spec: EnumerationSpec) -> list[tuple]:
    if spec.mode == "exhaustive":
        out = []
        for n in spec.n_values:
            total = 1 << (n * (n - 1) // 2)
            for start in range(0, total, EXHAUSTIVE_SHARD):
                out.append(("exhaustive", n, start, min(total, start + EXHAUSTIVE_SHARD)))
        return out
    return [
        ("random", s, min(RANDOM_SHARD, spec.count - s * RANDOM_SHARD))
        for s in range((spec.count + RANDOM_SHARD - 1) // RANDOM_SHARD)
    ]


def enumerate_graphs(spec: EnumerationSpec, k: int = 2, target: int | None = None) -> Iterator[Graph]:
    """Stream the graphs described by ``spec`` in shard order."""
    for shard in _shards(spec):
        if shard[0] == "exhaustive":
            _, n, start, stop = shard
            rows = K.rows_from_masks(np.arange(start, stop, dtype=np.int64), n)
            for r in rows.tolist():
                yield Graph(n, tuple(r))
        else:
            _, s, size = shard
            rng = _shard_rng(spec.seed, s)
            for _ in range(size):
                yield _sample(spec, rng, k, target)


# -- verification ---------------------------------------------------------------------

def degree_prefilter(hyp: Hypothesis, k: int, i: int | None, n: int, degs: np.ndarray) -> np.ndarray:
    """Necessary degree-only conditions of ``hyp`` for a batch of degree rows."""
    rows = degs.shape[0]
    if n == 0:
        degs = np.zeros((rows, 1), np.int64)
        h = np.zeros(rows, np.int64)
        low = np.zeros(rows, np.int64)
        delta = np.zeros(rows, np.int64)
    else:
        kk = 2 if hyp is Hypothesis.LEM10 else k
        h = (degs >= 2 * kk).sum(axis=1)
        low = (degs <= 2 * kk - 2).sum(axis=1)
        delta = degs.min(axis=1)
    diff = h - low
    true = np.ones(rows, bool)
    if hyp is Hypothesis.CH:
        return true & (n >= 3 * k) & (delta >= 2 * k)
    if hyp is Hypothesis.DE:
        return true & (k >= 3) & (diff >= k * k + 2 * k - 4)
    if hyp is Hypothesis.H3K:
        return diff >= 3 * k
    if hyp is Hypothesis.MAIN2K:
        return true & (n >= 19 * k) & (diff >= 2 * k)
    if hyp is Hypothesis.INDUCT:
        return true & (n >= 16 * k + 3 * i) & (diff >= 3 * k - i)
    if hyp is Hypothesis.T2KPLUST:
        return true & (n >= 3 * k) & (diff >= 2 * k)
    if hyp is Hypothesis.COR9:
        return true & (n >= 3 * k) & (h >= 2 * k) & (delta >= 2 * k - 1)
    if hyp is Hypothesis.ONETRI:
        return true & (k >= 3) & (diff >= 2 * k)
    return diff >= 4


def _empty_part() -> dict:
    return {"graphs_tested": 0, "hypothesis_count": 0, "solved": 0, "undecided": 0,
            "counterexamples": []}


def _check_graph(g: Graph, hyp: Hypothesis, k: int, i: int | None, part: dict,
                 exact_only: bool, config: Config) -> None:
    verdict = check_hypothesis(g, hyp, k, i, config=config)
    if not verdict.holds:
        return
    part["hypothesis_count"] += 1
    need = required_cycles(hyp, k)
    if exact_only:
        r = find_disjoint_cycles(g, need, mode="exact", config=config)
    else:
        r = solve_with_reduction(g, need, config=config)
    if r.status is Status.FOUND:
        part["solved"] += 1
    elif r.status is Status.EXHAUSTED:
        part["undecided"] += 1
    else:
        part["counterexamples"].append({
            "edge_list": g.to_edge_list(),
            "verdict": verdict.to_json(),
            "required_cycles": need,
            "nodes": r.nodes,
        })


def _run_shard(job: tuple) -> dict:
    hyp, k, i, spec, target, config, shard = job
    part = _empty_part()
    if shard[0] == "exhaustive":
        _, n, start, stop = shard
        masks = np.arange(start, stop, dtype=np.int64)
        part["graphs_tested"] = len(masks)
        sel = degree_prefilter(hyp, k, i, n, K.degrees_from_masks(masks, n))
        chosen = masks[sel]
        if len(chosen):
            for r in K.rows_from_masks(chosen, n).tolist():
                _check_graph(Graph(n, tuple(r)), hyp, k, i, part, True, config)
        return part
    _, s, size = shard
    rng = _shard_rng(spec.seed, s)
    for _ in range(size):
        g = _sample(spec, rng, k, target)
        part["graphs_tested"] += 1
        _check_graph(g, hyp, k, i, part, g.n <= EXHAUSTIVE_MAX_N, config)
    return part


def _run(jobs_list: list[tuple], jobs: int) -> list[dict]:
    if jobs <= 1 or len(jobs_list) <= 1:
        return [_run_shard(j) for j in jobs_list]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_shard, jobs_list))


def _spec_json(spec: EnumerationSpec) -> dict:
    d = asdict(spec)
    d.pop("max_exhaustive_n")
    return d


def verify_theorem(
    hyp: Hypothesis | str,
    k: int,
    spec: EnumerationSpec,
    *,
    i: int | None = None,
    jobs: int = 1,
    config: Config = DEFAULT_CONFIG,
) -> VerificationReport:
    """Check ``hyp => c(G) >= k`` on every graph of ``spec``.

    Exhaustive graphs are decided by the exact search; sampled ones by the
    reduction pipeline.  Any complete search that finds too few cycles on a
    hypothesis-satisfying graph is recorded as a counterexample.
    """
    hyp = Hypothesis.parse(hyp)
    if hyp is Hypothesis.INDUCT:
        if i is None or i > k:
            raise ValueError("INDUCT needs i <= k")
    else:
        i = None
    if hyp is Hypothesis.LEM10 and k != 2:
        raise ValueError("LEM10 is stated for k = 2")
    start = time.perf_counter()
    target = default_target(hyp, k, i)
    report = VerificationReport(hyp.value, k, i, _spec_json(spec))
    jobs_list = [(hyp, k, i, spec, target, config, shard) for shard in _shards(spec)]
    for part in _run(jobs_list, jobs):
        report.merge(part)
    report.wall_time = time.perf_counter() - start
    return report


def reverify_counterexample(entry: dict, hyp: Hypothesis | str, k: int, i: int | None = None,
                            config: Config = DEFAULT_CONFIG) -> bool:
    """True iff the serialized graph satisfies ``hyp`` and provably lacks the cycles."""
    g = parse_edge_list(entry["edge_list"])
    if not check_hypothesis(g, hyp, k, i, config=config).holds:
        return False
    r = exact_cycle_search(g, required_cycles(hyp, k), config.node_budget)
    return r.status is Status.NOT_EXIST


# -- open range hunt ------------------------------------------------------------------

def _relabel_reversed(g: Graph) -> Graph:
    n = g.n
    return Graph.from_edges(n, [(n - 1 - u, n - 1 - v) for u, v in g.edges()])


def _hunt_shard(job: tuple) -> dict:
    k, spec, config, shard = job
    part = _empty_part()
    graphs: list[Graph]
    if shard[0] == "exhaustive":
        _, n, start, stop = shard
        masks = np.arange(start, stop, dtype=np.int64)
        part["graphs_tested"] = len(masks)
        degs = K.degrees_from_masks(masks, n)
        diff = (degs >= 2 * k).sum(axis=1) - (degs <= 2 * k - 2).sum(axis=1)
        chosen = masks[diff >= 2 * k]
        graphs = [Graph(n, tuple(r)) for r in K.rows_from_masks(chosen, n).tolist()] if len(chosen) else []
    else:
        _, s, size = shard
        rng = _shard_rng(spec.seed, s)
        graphs = [_sample(spec, rng, k, 2 * k) for _ in range(size)]
        part["graphs_tested"] = size
    for g in graphs:
        if h_minus_ell(g.degrees, k) < 2 * k:
            continue
        part["hypothesis_count"] += 1
        r = find_disjoint_cycles(g, k, mode="heuristic", config=config)
        if r.status is Status.FOUND:
            part["solved"] += 1
            continue
        if r.status is Status.EXHAUSTED:
            part["undecided"] += 1
            continue
        again = exact_cycle_search(_relabel_reversed(g), k, config.node_budget)
        if again.status is not Status.NOT_EXIST:
            raise AssertionError("exact searches disagree on a gap candidate")
        part["counterexamples"].append({
            "edge_list": g.to_edge_list(),
            "h_minus_ell": h_minus_ell(g.degrees, k),
            "required_cycles": k,
            "nodes": r.nodes,
        })
    return part


def hunt_gap(k: int, n_range: tuple[int, int], spec: EnumerationSpec, *, jobs: int = 1,
             config: Config = DEFAULT_CONFIG) -> VerificationReport:
    """Look for graphs with ``4k+1 <= |G| < 19k``, ``h - ell >= 2k`` and fewer than ``k`` cycles.

    The question is open in this range, so hits are findings, not failures.
    ``n_range`` is inclusive and overrides the spec's own ``n`` bounds.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    lo, hi = n_range
    if lo > hi:
        return VerificationReport("GAP", k, None, {"n_range": [lo, hi]})
    if lo < 4 * k + 1 or hi > 19 * k - 1:
        raise ValueError(f"n range [{lo}, {hi}] leaves the open gap [{4 * k + 1}, {19 * k - 1}]")
    report_spec = EnumerationSpec(
        n_min=lo, n_max=hi, mode=spec.mode, count=spec.count, p=spec.p,
        target=spec.target, seed=spec.seed, max_exhaustive_n=spec.max_exhaustive_n,
    )
    start = time.perf_counter()
    report = VerificationReport("GAP", k, None, _spec_json(report_spec))
    jobs_list = [(k, report_spec, config, shard) for shard in _shards(report_spec)]
    if jobs <= 1 or len(jobs_list) <= 1:
        parts = [_hunt_shard(j) for j in jobs_list]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_hunt_shard, jobs_list))
    for part in parts:
        report.merge(part)
    report.wall_time = time.perf_counter() - start
    return report
