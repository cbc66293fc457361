"""Extender decisions, heuristic attacks, and the window-entropy certificate.

A dag is an (eps, rho)-extender when every vertex set of size at most
eps * m leaves a surviving directed path of length at least rho.  Small
instances are decided exhaustively; larger ones are attacked heuristically,
which yields refutations or upper bounds only.

The exact-mass machinery asks, for a labeling of Z_n into few classes, how
much of the dyadic edge law falls on label-decreasing pairs; the window
entropies explain why that mass cannot exceed 1/2 by much when the label
alphabet is small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .dag import Dag, codepth, graph_depth, topological_order
from .depthfn import DepthParams, admits_depth_function
from .errors import BudgetError, GraphError
from .laws import FiniteLaw, binary_entropy, exceedance_probability
from .randgraph import GndConfig, IotaParams, generate_gnd, iota_difference_weights, make_rng
from .rationals import floor_scaled, mp_power, pow_floor

DEFAULT_SUBSET_BUDGET = 5_000_000

_COUNT_CAP = 1 << 62  # saturation for path counts in the greedy attack


@dataclass(frozen=True)
class ExtenderParams:
    epsilon: float
    rho: int
    growth_constant: float | None = None

    def __post_init__(self) -> None:
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must be in (0, 1)")
        if self.rho < 0:
            raise ValueError("rho must be >= 0")
        if self.growth_constant is not None and self.growth_constant <= 0:
            raise ValueError("growth_constant must be positive")


@dataclass(frozen=True)
class ExtenderVerdict:
    """Decision plus witness: a refuting set, or the exhausted search size."""

    is_extender: bool
    refuting_set: frozenset[int] | None
    refuting_codepth: int | None
    checked_sets: int


def decide_extender_bruteforce(
    g: Dag, p: ExtenderParams, budget: int = DEFAULT_SUBSET_BUDGET
) -> ExtenderVerdict:
    """Exhaust all candidate sets S with |S| <= eps * m, smallest first.

    Returns the first refuting witness in (size, lexicographic) order, or an
    exhaustion certificate.
    """
    topological_order(g)  # reject cyclic input early
    m = g.vertex_count
    smax = min(floor_scaled(p.epsilon, m), m - 1)
    total = sum(math.comb(m, i) for i in range(smax + 1))
    if total > budget:
        raise BudgetError(
            f"{total} candidate sets exceed budget {budget}", total, budget
        )
    checked = 0
    for size in range(smax + 1):
        for s in combinations(range(m), size):
            checked += 1
            value = codepth(g, s)
            if value < p.rho:
                return ExtenderVerdict(
                    is_extender=False,
                    refuting_set=frozenset(s),
                    refuting_codepth=value,
                    checked_sets=checked,
                )
    return ExtenderVerdict(
        is_extender=True, refuting_set=None, refuting_codepth=None, checked_sets=checked
    )


@dataclass(frozen=True)
class AttackResult:
    removed: frozenset[int]
    codepth: int
    strategy: str


def _longest_path_scores(g: Dag, removed: set[int]) -> tuple[int, list[int]]:
    """(depth, per-vertex count of maximum-length paths through the vertex).

    Counts saturate at 2^62; only the argmax matters.
    """
    m = g.vertex_count
    order = [v for v in topological_order(g) if v not in removed]
    len_end = [0] * m
    cnt_end = [1] * m
    for v in order:
        for w in g.out_adj[v]:
            if w in removed:
                continue
            cand = len_end[v] + 1
            if cand > len_end[w]:
                len_end[w] = cand
                cnt_end[w] = cnt_end[v]
            elif cand == len_end[w]:
                cnt_end[w] = min(cnt_end[w] + cnt_end[v], _COUNT_CAP)
    len_start = [0] * m
    cnt_start = [1] * m
    for v in reversed(order):
        for w in g.out_adj[v]:
            if w in removed:
                continue
            cand = len_start[w] + 1
            if cand > len_start[v]:
                len_start[v] = cand
                cnt_start[v] = cnt_start[w]
            elif cand == len_start[v]:
                cnt_start[v] = min(cnt_start[v] + cnt_start[w], _COUNT_CAP)
    depth = max((len_end[v] for v in order), default=0)
    scores = [0] * m
    for v in order:
        if len_end[v] + len_start[v] == depth:
            scores[v] = min(cnt_end[v] * cnt_start[v], _COUNT_CAP)
    return depth, scores


def min_codepth_attack(
    g: Dag,
    budget_size: int,
    strategy: str = "greedy",
    rng: np.random.Generator | None = None,
    restarts: int = 20,
) -> AttackResult:
    """Best removal set of size <= budget_size found by the chosen strategy.

    The reported codepth is recomputed from the returned set, so the result
    is always a valid upper bound on the true minimum.

    greedy: repeatedly delete the vertex lying on the most currently-longest
    paths (ties to the smallest index).  random: ``restarts`` uniform sets,
    keep the best.
    """
    m = g.vertex_count
    if budget_size >= m:
        raise GraphError("budget_size must be < vertex_count (S stays proper)")
    if strategy == "greedy":
        removed: set[int] = set()
        while len(removed) < budget_size:
            depth, scores = _longest_path_scores(g, removed)
            if depth == 0:
                break
            best = max(range(m), key=lambda v: (scores[v], -v))
            removed.add(best)
        chosen = frozenset(removed)
    elif strategy == "random":
        if rng is None:
            rng = make_rng(0)
        chosen = frozenset()
        best_value = graph_depth(g)
        for _ in range(restarts):
            s = frozenset(int(v) for v in rng.choice(m, size=budget_size, replace=False))
            value = codepth(g, s)
            if value < best_value:
                best_value = value
                chosen = s
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return AttackResult(removed=chosen, codepth=codepth(g, chosen), strategy=strategy)


def label_cardinality(n: int, eps: float) -> int:
    """Alphabet size floor(n ** eps^3), with a high-precision boundary check."""
    return max(1, pow_floor(n, eps**3))


@dataclass(frozen=True)
class MassReport:
    n: int
    epsilon: float
    k: int
    mass: Fraction
    bound: float
    holds: bool


def _validate_labels(p: IotaParams, labels: Sequence[int], k: int, allow_range_override: bool) -> np.ndarray:
    arr = np.asarray(labels, dtype=np.int64)
    if arr.shape != (p.n,):
        raise ValueError(f"labeling must assign one label per element of Z_{p.n}")
    if arr.min() < 0:
        raise ValueError("labels must be naturals")
    if arr.max() >= k and not allow_range_override:
        raise ValueError(
            f"label {int(arr.max())} outside range(k={k}); pass allow_range_override for diagnostics"
        )
    return arr


def decreasing_label_mass(
    p: IotaParams,
    labels: Sequence[int],
    eps: float,
    allow_range_override: bool = False,
) -> MassReport:
    """Exact edge-law mass of pairs (a, b) with label(a) > label(b).

    Computed over difference classes: an edge at cyclic difference delta
    carries weight w(delta), and the label comparison is counted for all n
    starting points at once.  The certified bound is 1/2 + 4 * eps, valid
    when the alphabet really is floor(n ** eps^3).
    """
    k = label_cardinality(p.n, eps)
    arr = _validate_labels(p, labels, k, allow_range_override)
    weights = iota_difference_weights(p)
    num = 0
    for delta, w in enumerate(weights):
        if w == 0:
            continue
        num += w * int(np.count_nonzero(arr > np.roll(arr, -delta)))
    mass = Fraction(num, p.denominator)
    bound = 0.5 + 4.0 * eps
    return MassReport(n=p.n, epsilon=eps, k=k, mass=mass, bound=bound, holds=mass < bound)


def _window_counts(arr: np.ndarray, k: int) -> np.ndarray:
    """prefix[label, i] = #{j < i: label(j mod n) == label}, i up to 2n."""
    n = len(arr)
    doubled = np.concatenate([arr, arr])
    prefix = np.zeros((k, 2 * n + 1), dtype=np.int64)
    for label in range(k):
        prefix[label, 1:] = np.cumsum(doubled == label)
    return prefix


def window_label_counts(prefix: np.ndarray, start: int, width: int) -> np.ndarray:
    return prefix[:, start + width] - prefix[:, start]


def window_exceedance_mass(p: IotaParams, labels: Sequence[int], k: int | None = None) -> Fraction:
    """The decreasing-label mass recomputed through the window decomposition.

    Averages, over uniform (v, r), the exceedance probability of the
    empirical label law on [v, v + 2^r) against the one on
    [v + 2^r, v + 2^{r+1}).  Exact; must agree with
    :func:`decreasing_label_mass` for every labeling.
    """
    arr = np.asarray(labels, dtype=np.int64)
    if k is None:
        k = int(arr.max()) + 1
    n, r_count = p.n, p.r_count
    prefix = _window_counts(arr, k)
    num = 0
    for r in range(r_count):
        width = 1 << r
        scale = 4 ** (r_count - 1 - r)
        for v in range(n):
            c1 = window_label_counts(prefix, v, width)
            c2 = window_label_counts(prefix, v + width, width)
            law_x = FiniteLaw.from_counts({i: int(c) for i, c in enumerate(c1) if c})
            law_y = FiniteLaw.from_counts({i: int(c) for i, c in enumerate(c2) if c})
            exceed = exceedance_probability(law_x, law_y)
            assert isinstance(exceed, Fraction)
            # exceed has denominator dividing 4^r; rescale onto the common one
            num += exceed.numerator * (scale * (4**r) // exceed.denominator)
    return Fraction(num, p.denominator)


@dataclass(frozen=True)
class WindowProfile:
    """Entropies of the dyadic label windows and the telescoping aggregate."""

    n: int
    r_count: int
    k: int
    gap_mean: float           # E_{v,r}[2 H(X_{v,r+1}) - H(X_{v,r}) - H(Y_{v,r})]
    telescoped_mean: float    # (2 / R) * E_v[H(X_{v,R}) - H(X_{v,0})]
    markov_bound: float       # 2 log2(k) / R
    min_gap: float

    @property
    def telescoping_residual(self) -> float:
        return abs(self.gap_mean - self.telescoped_mean)


def window_entropy_profile(p: IotaParams, labels: Sequence[int], k: int | None = None) -> WindowProfile:
    """Window entropies H(X_{v,r}), H(Y_{v,r}) and their aggregate identity.

    X_{v,r} is the empirical law of the labels on [v, v + 2^r); Y_{v,r} the
    one on the adjacent window.  The mean per-window entropy gap telescopes
    to (2/R) * E_v[H(X_{v,R}) - H(X_{v,0})].
    """
    arr = np.asarray(labels, dtype=np.int64)
    if k is None:
        k = int(arr.max()) + 1
    n, r_count = p.n, p.r_count
    prefix = _window_counts(arr, k)

    def entropy_at(start: int, width: int) -> float:
        counts = window_label_counts(prefix, start % n, width)
        h = 0.0
        for c in counts:
            if c:
                q = c / width
                h -= q * math.log2(q)
        return h

    gap_total = 0.0
    min_gap = math.inf
    top_total = 0.0
    for v in range(n):
        top_total += entropy_at(v, 1 << r_count)  # H(X_{v,0}) = 0: single label
        for r in range(r_count):
            width = 1 << r
            gap = (
                2.0 * entropy_at(v, 2 * width)
                - entropy_at(v, width)
                - entropy_at(v + width, width)
            )
            gap_total += gap
            min_gap = min(min_gap, gap)
    pairs = n * r_count
    return WindowProfile(
        n=n,
        r_count=r_count,
        k=k,
        gap_mean=gap_total / pairs,
        telescoped_mean=2.0 * (top_total / n) / r_count,
        markov_bound=2.0 * math.log2(k) / r_count if k > 1 else 0.0,
        min_gap=min_gap,
    )


def admission_bound(n: int, d: int, eps: float) -> float:
    """Counting bound 2^(H(1/d) d n) * (1/2 + 4 eps)^((d-1) n), in log space."""
    if d < 3:
        raise ValueError("the bound requires d >= 3")
    if not 0 < eps < 1:
        raise ValueError("eps must be in (0, 1)")
    log2_value = binary_entropy(1.0 / d) * d * n + (d - 1) * n * math.log2(0.5 + 4 * eps)
    if log2_value > 1020:
        return math.inf
    return 2.0**log2_value


@dataclass(frozen=True)
class AdmissionReport:
    n: int
    d: int
    epsilon: float
    k: int
    trials: int
    admitted: int
    rate: float
    radius: float
    bound: float


def depth_admission_experiment(
    n: int,
    d: int,
    eps: float,
    trials: int,
    seed: int = 0,
    enumeration_budget: int = 2_000_000,
) -> AdmissionReport:
    """Monte-Carlo rate of random graphs admitting an (eps, k)-depth function.

    k = floor(n ** eps^3); existence per draw is decided by exhaustive
    enumeration, so n must stay small.
    """
    k = label_cardinality(n, eps)
    params = DepthParams(eps, k)
    admitted = 0
    for t in range(trials):
        result = generate_gnd(GndConfig(n, d, seed), rng=make_rng((seed, t)))
        if admits_depth_function(result.graph, params, budget=enumeration_budget):
            admitted += 1
    rate = admitted / trials
    return AdmissionReport(
        n=n,
        d=d,
        epsilon=eps,
        k=k,
        trials=trials,
        admitted=admitted,
        rate=rate,
        radius=math.sqrt(rate * (1 - rate) / trials),
        bound=admission_bound(n, d, eps),
    )


def reference_growth(n: int, delta: float = 0.019) -> float:
    """Reference curve n ** delta for trend reports (informational only)."""
    return float(mp_power(n, delta))
