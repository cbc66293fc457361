"""The dyadic edge law on Z_n, its samplers, and the random graphs built on it.

The law iota_n: pick v uniform in Z_n, a scale r uniform in {0..R(n)-1} with
R(n) = floor(log2 n), then an endpoint pair uniform in the two consecutive
dyadic windows [v, v+2^r) and [v+2^r, v+2^{r+1}).  ``dn`` independent draws
give the random graph on Z_n; deleting high-degree vertices and backward-edge
sources cleans it up into a bounded-degree dag with increasing edges.

Exactness: every probability here is a ``Fraction`` over the common
denominator n * R * 4^(R-1).  The pmf aggregates draws by the cyclic
difference delta = y - x mod n; a scale r contributes to delta exactly
``2^r - |delta - 2^r|`` of its 4^r equiprobable window pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .dag import Dag, Edge, degree_stats, induced_subgraph
from .errors import BudgetError, EmptyResultError, GraphError

DEFAULT_PMF_CAP = 4096


@dataclass(frozen=True)
class IotaParams:
    """Cyclic group size n >= 2; the scale count R(n) = floor(log2 n)."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise GraphError("n must be >= 2 (R(1) = 0 leaves no scales)")

    @property
    def r_count(self) -> int:
        return self.n.bit_length() - 1

    @property
    def denominator(self) -> int:
        r = self.r_count
        return self.n * r * 4 ** (r - 1)


def make_rng(seed) -> np.random.Generator:
    """Seeded generator (numpy PCG64).

    Substreams come from tuple seeds: ``make_rng((master, index))`` is the
    per-trial stream, deterministic for a fixed numpy version.
    """
    return np.random.default_rng(seed)


def jn_edge(p: IotaParams, v: int, r: int, a: int, b: int) -> Edge:
    """Deterministic map from a raw draw tuple to the sampled edge."""
    n = p.n
    return ((v + a) % n, (v + (1 << r) + b) % n)


def jn_prime_edge(p: IotaParams, v: int, r: int, a: int, b: int) -> Edge:
    """Alternate sampler map (v, v + 2^r + b - a); same law as :func:`jn_edge`."""
    n = p.n
    return (v % n, (v + (1 << r) + b - a) % n)


def sample_jn(p: IotaParams, rng: np.random.Generator) -> Edge:
    r = int(rng.integers(0, p.r_count))
    v = int(rng.integers(0, p.n))
    width = 1 << r
    return jn_edge(p, v, r, int(rng.integers(0, width)), int(rng.integers(0, width)))


def sample_jn_prime(p: IotaParams, rng: np.random.Generator) -> Edge:
    r = int(rng.integers(0, p.r_count))
    v = int(rng.integers(0, p.n))
    width = 1 << r
    return jn_prime_edge(p, v, r, int(rng.integers(0, width)), int(rng.integers(0, width)))


def iota_difference_weights(p: IotaParams) -> list[int]:
    """Integer numerators over the common denominator, indexed by delta.

    ``weights[delta]`` is the numerator of the per-edge probability of any
    edge (x, x + delta mod n); entry 0 is unused (the law avoids the
    diagonal).
    """
    r_count = p.r_count
    top = 1 << r_count
    weights = [0] * top
    for r in range(r_count):
        width = 1 << r
        scale = 4 ** (r_count - 1 - r)
        for delta in range(1, 2 * width):
            weights[delta] += (width - abs(delta - width)) * scale
    return weights


def iota_pmf(p: IotaParams, cap: int = DEFAULT_PMF_CAP) -> dict[Edge, Fraction]:
    """Exact pmf of the edge law, as a full outcome -> Fraction map."""
    if p.n > cap:
        raise BudgetError(f"n = {p.n} exceeds pmf enumeration cap {cap}", p.n, cap)
    n = p.n
    den = p.denominator
    weights = iota_difference_weights(p)
    pmf: dict[Edge, Fraction] = {}
    for delta, w in enumerate(weights):
        if w == 0:
            continue
        prob = Fraction(w, den)
        for x in range(n):
            pmf[(x, (x + delta) % n)] = prob
    return pmf


def backward_mass(p: IotaParams) -> Fraction:
    """Exact mass of edges whose representatives decrease (x > y).

    An edge at difference delta wraps for exactly delta starting points, so
    the mass is sum(delta * weight(delta)) over the common denominator.
    """
    weights = iota_difference_weights(p)
    num = sum(delta * w for delta, w in enumerate(weights))
    return Fraction(num, p.denominator)


@dataclass(frozen=True)
class GndConfig:
    n: int
    d: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 2:
            raise GraphError("n must be >= 2")
        if self.d < 1:
            raise GraphError("d must be >= 1")


@dataclass(frozen=True)
class DrawLog:
    """Raw (v, r, a, b) tuples behind one graph draw, multiplicity kept."""

    v: np.ndarray
    r: np.ndarray
    a: np.ndarray
    b: np.ndarray

    def __len__(self) -> int:
        return len(self.v)

    def tuples(self) -> Iterator[tuple[int, int, int, int]]:
        for row in zip(self.v, self.r, self.a, self.b):
            yield tuple(int(x) for x in row)

    def to_json(self) -> list[list[int]]:
        return [list(t) for t in self.tuples()]


@dataclass(frozen=True)
class GndResult:
    graph: Dag
    draws: DrawLog
    x: np.ndarray
    y: np.ndarray

    @property
    def backward_draw_count(self) -> int:
        return int(np.count_nonzero(self.x > self.y))


def _draw_edges(n: int, d: int, rng: np.random.Generator) -> tuple[DrawLog, np.ndarray, np.ndarray]:
    count = d * n
    r_count = n.bit_length() - 1
    r = rng.integers(0, r_count, size=count)
    v = rng.integers(0, n, size=count)
    width = np.left_shift(1, r)
    a = rng.integers(0, width)
    b = rng.integers(0, width)
    x = (v + a) % n
    y = (v + width + b) % n
    return DrawLog(v=v, r=r, a=a, b=b), x, y


def generate_gnd(c: GndConfig, rng: np.random.Generator | None = None) -> GndResult:
    """dn independent edge draws on Z_n; duplicates collapse into the edge set.

    Deterministic for a fixed seed.  The raw graph may be cyclic and have
    high-degree vertices; see :func:`cleanup_to_hn`.
    """
    if rng is None:
        rng = make_rng(c.seed)
    log, x, y = _draw_edges(c.n, c.d, rng)
    edges = frozenset(zip(x.tolist(), y.tolist()))
    return GndResult(graph=Dag(c.n, edges), draws=log, x=x, y=y)


@dataclass(frozen=True)
class CleanupConfig:
    """Degree cap: vertices of degree >= 2 * delta_cap are removed."""

    delta_cap: int

    def __post_init__(self) -> None:
        if self.delta_cap < 1:
            raise GraphError("delta_cap must be >= 1")


@dataclass(frozen=True)
class CleanupResult:
    graph: Dag
    kept: tuple[int, ...]
    removed: frozenset[int]

    @property
    def removed_count(self) -> int:
        return len(self.removed)


def cleanup_to_hn(g: Dag, cfg: CleanupConfig) -> CleanupResult:
    """Delete high-degree vertices and sources of backward edges.

    The survivors induce an acyclic graph whose edges all increase in the
    representative order, with maxdeg < 2 * delta_cap.
    """
    stats = degree_stats(g)
    bad = {v for v in range(g.vertex_count) if stats.deg[v] >= 2 * cfg.delta_cap}
    bad.update(u for u, v in g.edges if u > v)
    if len(bad) == g.vertex_count:
        raise EmptyResultError("cleanup removed every vertex")
    keep = [v for v in range(g.vertex_count) if v not in bad]
    sub, kept = induced_subgraph(g, keep)
    return CleanupResult(graph=sub, kept=kept, removed=frozenset(bad))


@dataclass(frozen=True)
class TailReport:
    """Empirical frequencies of the two bad events against their bounds."""

    trials: int
    freq_high_degree: float
    freq_backward: float
    radius_high_degree: float
    radius_backward: float
    bound_high_degree: float
    bound_backward: float


def high_degree_tail_bound(d: int, delta_cap: int, eps: float) -> float:
    """2 d^cap / (cap! * eps): bound on P(#high-degree vertices >= eps * n)."""
    return 2.0 * d**delta_cap / (math.factorial(delta_cap) * eps)


def backward_tail_bound(n: int, d: int, eps: float) -> float:
    """2 d / (eps * R(n)): bound on P(#backward edges >= eps * d * n)."""
    return 2.0 * d / (eps * (n.bit_length() - 1))


def _binomial_radius(hits: int, trials: int) -> float:
    p = hits / trials
    return math.sqrt(p * (1 - p) / trials)


def tail_experiment(
    c: GndConfig, cfg: CleanupConfig, eps: float, trials: int
) -> TailReport:
    """Monte-Carlo frequencies of the high-degree and backward-edge events.

    Trial t uses the substream seeded by (master seed, t); events are
    measured on the collapsed edge set.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n, d = c.n, c.d
    hits_deg = 0
    hits_back = 0
    for t in range(trials):
        rng = make_rng((c.seed, t))
        _, x, y = _draw_edges(n, d, rng)
        keys = np.unique(x.astype(np.int64) * n + y.astype(np.int64))
        ex = keys // n
        ey = keys % n
        deg = np.bincount(ex, minlength=n) + np.bincount(ey, minlength=n)
        if np.count_nonzero(deg >= 2 * cfg.delta_cap) >= eps * n:
            hits_deg += 1
        if np.count_nonzero(ex > ey) >= eps * d * n:
            hits_back += 1
    return TailReport(
        trials=trials,
        freq_high_degree=hits_deg / trials,
        freq_backward=hits_back / trials,
        radius_high_degree=_binomial_radius(hits_deg, trials),
        radius_backward=_binomial_radius(hits_back, trials),
        bound_high_degree=high_degree_tail_bound(d, cfg.delta_cap, eps),
        bound_backward=backward_tail_bound(n, d, eps),
    )
