"""High/low degree classification and the degree hypotheses of the theorems."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .graph import Graph, complete_graph, two_core
from .packing import Config, DEFAULT_CONFIG, triangle_number

ALPHA = 16


@dataclass(frozen=True)
class DegreeProfile:
    k: int
    high: frozenset[int]
    low: frozenset[int]
    strata: dict[int, frozenset[int]] = field(compare=False)

    @property
    def h(self) -> int:
        return len(self.high)

    @property
    def ell(self) -> int:
        return len(self.low)

    @property
    def h_minus_ell(self) -> int:
        return self.h - self.ell

    @property
    def middle(self) -> frozenset[int]:
        """Vertices of degree exactly ``2k - 1``."""
        return self.strata.get(2 * self.k - 1, frozenset())

    def at_most(self, d: int) -> frozenset[int]:
        return frozenset(v for deg, vs in self.strata.items() if deg <= d for v in vs)

    def at_least(self, d: int) -> frozenset[int]:
        return frozenset(v for deg, vs in self.strata.items() if deg >= d for v in vs)


def classify(g: Graph, k: int) -> DegreeProfile:
    if k < 2:
        raise ValueError("k must be >= 2")
    strata: dict[int, set[int]] = {}
    for v, d in enumerate(g.degrees):
        strata.setdefault(d, set()).add(v)
    high = frozenset(v for v, d in enumerate(g.degrees) if d >= 2 * k)
    low = frozenset(v for v, d in enumerate(g.degrees) if d <= 2 * k - 2)
    return DegreeProfile(k, high, low, {d: frozenset(vs) for d, vs in sorted(strata.items())})


def h_minus_ell(degrees, k: int) -> int:
    return sum(1 for d in degrees if d >= 2 * k) - sum(1 for d in degrees if d <= 2 * k - 2)


class Hypothesis(str, enum.Enum):
    CH = "CH"              # |G| >= 3k and min degree >= 2k
    DE = "DE"              # k >= 3 and h - ell >= k^2 + 2k - 4
    H3K = "H3K"            # h - ell >= 3k
    MAIN2K = "MAIN2K"      # |G| >= 19k and h - ell >= 2k
    INDUCT = "INDUCT"      # |G| >= 16k + 3i and h >= ell + 3k - i
    T2KPLUST = "T2KPLUST"  # |G| >= 3k and h - ell >= 2k + t(G)
    COR9 = "COR9"          # |G| >= 3k, h >= 2k and min degree >= 2k - 1
    ONETRI = "ONETRI"      # k >= 3, h - ell >= 2k, no two disjoint triangles
    LEM10 = "LEM10"        # h_2 - ell_2 >= 4, 2-core has >= 6 vertices and is not SK_5

    @classmethod
    def parse(cls, text: str | Hypothesis) -> Hypothesis:
        if isinstance(text, Hypothesis):
            return text
        try:
            return cls(text.strip().upper())
        except ValueError:
            raise ValueError(
                f"unknown hypothesis {text!r}; expected one of {', '.join(h.value for h in cls)}"
            ) from None


@dataclass(frozen=True)
class Witness:
    name: str
    value: int
    bound: int
    op: str = ">="

    @property
    def holds(self) -> bool:
        return self.value >= self.bound if self.op == ">=" else self.value <= self.bound

    def to_json(self) -> dict:
        return {"name": self.name, "value": self.value, "bound": self.bound, "op": self.op}


@dataclass(frozen=True)
class HypothesisVerdict:
    """``witness`` is the first failing condition, or the last one checked when all hold."""

    hypothesis: Hypothesis
    k: int
    i: int | None
    holds: bool
    witness: Witness

    def to_json(self) -> dict:
        return {
            "hypothesis": self.hypothesis.value,
            "k": self.k,
            "i": self.i,
            "holds": self.holds,
            "witness": self.witness.to_json(),
        }


def sk_graph(m: int) -> Graph:
    """K_m with the edge ``0-1`` subdivided by the new vertex ``m``."""
    if m < 3:
        raise ValueError("SK_m needs m >= 3")
    rows = list(complete_graph(m).rows) + [0]
    rows[0] &= ~(1 << 1)
    rows[1] &= ~1
    rows[0] |= 1 << m
    rows[1] |= 1 << m
    rows[m] = 0b11
    return Graph(m + 1, tuple(rows))


_SK5 = None


def is_sk5(g: Graph) -> bool:
    global _SK5
    if _SK5 is None:
        _SK5 = sk_graph(5)
    return g.n == 6 and g.m == 11 and g.is_isomorphic(_SK5)


def required_cycles(hyp: Hypothesis | str, k: int) -> int:
    """Number of disjoint cycles the corresponding theorem guarantees."""
    return 2 if Hypothesis.parse(hyp) is Hypothesis.LEM10 else k


def _conditions(g: Graph, hyp: Hypothesis, k: int, i: int | None, config: Config, t: int | None):
    """Yield the conditions of ``hyp`` in evaluation order (cheap ones first)."""
    n = g.n
    deg = g.degrees
    if hyp is Hypothesis.LEM10:
        yield Witness("h2-ell2", h_minus_ell(deg, 2), 4)
        core, _ = two_core(g)
        yield Witness("|2-core|", core.n, 6)
        yield Witness("2-core is SK5", int(is_sk5(core)), 0, "<=")
        return
    diff = h_minus_ell(deg, k)
    if hyp is Hypothesis.CH:
        yield Witness("|G|", n, 3 * k)
        yield Witness("delta", min(deg, default=0), 2 * k)
    elif hyp is Hypothesis.DE:
        yield Witness("k", k, 3)
        yield Witness("h-ell", diff, k * k + 2 * k - 4)
    elif hyp is Hypothesis.H3K:
        yield Witness("h-ell", diff, 3 * k)
    elif hyp is Hypothesis.MAIN2K:
        yield Witness("|G|", n, 19 * k)
        yield Witness("h-ell", diff, 2 * k)
    elif hyp is Hypothesis.INDUCT:
        yield Witness("|G|", n, ALPHA * k + 3 * i)
        yield Witness("h-ell", diff, 3 * k - i)
    elif hyp is Hypothesis.T2KPLUST:
        yield Witness("|G|", n, 3 * k)
        yield Witness("h-ell", diff, 2 * k)
        tt = triangle_number(g, config) if t is None else t
        yield Witness("h-ell-t", diff - tt, 2 * k)
    elif hyp is Hypothesis.COR9:
        yield Witness("|G|", n, 3 * k)
        yield Witness("h", sum(1 for d in deg if d >= 2 * k), 2 * k)
        yield Witness("delta", min(deg, default=0), 2 * k - 1)
    elif hyp is Hypothesis.ONETRI:
        yield Witness("k", k, 3)
        yield Witness("h-ell", diff, 2 * k)
        tt = triangle_number(g, config) if t is None else t
        yield Witness("t", tt, 1, "<=")


def check_hypothesis(
    g: Graph,
    hyp: Hypothesis | str,
    k: int,
    i: int | None = None,
    *,
    t: int | None = None,
    config: Config = DEFAULT_CONFIG,
) -> HypothesisVerdict:
    """Evaluate a theorem's hypothesis on ``g``.

    ``i`` is required by (and only used for) INDUCT, where ``i <= k``.
    ``t`` may be passed when ``t(G)`` is already known.
    """
    hyp = Hypothesis.parse(hyp)
    if k < 2:
        raise ValueError("k must be >= 2")
    if hyp is Hypothesis.INDUCT:
        if i is None:
            raise ValueError("INDUCT needs i")
        if i > k:
            raise ValueError(f"INDUCT needs i <= k, got i={i}, k={k}")
    else:
        i = None
    if hyp is Hypothesis.LEM10 and k != 2:
        raise ValueError("LEM10 is stated for k = 2")
    last = None
    for w in _conditions(g, hyp, k, i, config, t):
        last = w
        if not w.holds:
            return HypothesisVerdict(hyp, k, i, False, w)
    return HypothesisVerdict(hyp, k, i, True, last)


def low_fraction_bound(g: Graph, k: int) -> bool:
    """Whether ``ell <= |G|/2 - k``; only meaningful when ``h - ell >= 2k``."""
    p = classify(g, k)
    if p.h_minus_ell < 2 * k:
        raise ValueError(f"precondition h - ell >= 2k fails: {p.h_minus_ell} < {2 * k}")
    return 2 * p.ell <= g.n - 2 * k
