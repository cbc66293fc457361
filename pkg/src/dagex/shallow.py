"""Deterministic separator construction certifying codepth <= (2/eps) m^(1-eps).

Input graphs must have increasing edges (apply ``topological_relabel``
first).  Edge lengths y - x are binned into the scale classes
[m^(j*eps), m^((j+1)*eps)); a pigeonhole argument guarantees some class is
light.  The separator consists of the starting vertices of that class plus a
periodic residue set, which together chop every surviving path into short
strides separated by rare long edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dag import Dag, Edge, codepth, degree_stats
from .errors import GraphError
from .rationals import exact_le, mp_power, pow_floor


def _require_increasing(g: Dag) -> None:
    for u, v in g.edges:
        if u >= v:
            raise GraphError(
                f"edge ({u}, {v}) does not increase; relabel topologically first"
            )


def _class_thresholds(m: int, eps: float, class_count: int) -> list:
    # mpmath powers: a single misclassified edge would break the certificate.
    return [mp_power(m, j * eps) for j in range(class_count + 1)]


def _classify(length: int, thresholds: list) -> int:
    lo, hi = 0, len(thresholds) - 1
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if thresholds[mid] <= length:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class ScaleClass:
    """The chosen scale c = index * eps and its edge class."""

    c: float
    index: int
    edges: frozenset[Edge]
    maxindeg: int


def pigeonhole_scale(g: Dag, eps: float) -> ScaleClass:
    """Smallest scale c on the grid {0, eps, 2*eps, ...} whose length class
    {(x, y): y - x in [m^c, m^(c+eps))} holds at most eps * d * m edges.

    Existence: |E| <= d * m and there are at least 1/eps classes.
    """
    if not 0 < eps < 1:
        raise GraphError("eps must be in (0, 1)")
    _require_increasing(g)
    m = g.vertex_count
    d = degree_stats(g).maxindeg
    class_count = math.ceil(1 / eps)
    if not g.edges:
        return ScaleClass(c=0.0, index=0, edges=frozenset(), maxindeg=d)
    thresholds = _class_thresholds(m, eps, class_count)
    buckets: dict[int, set[Edge]] = {}
    for u, v in g.edges:
        buckets.setdefault(_classify(v - u, thresholds), set()).add((u, v))
    for j in range(class_count):
        members = buckets.get(j, set())
        if exact_le(len(members), eps, d * m):
            return ScaleClass(c=j * eps, index=j, edges=frozenset(members), maxindeg=d)
    raise GraphError("no scale class qualifies; |E| > maxindeg * m?")


@dataclass(frozen=True)
class ShallowingResult:
    scale: float
    class_edges: frozenset[Edge]
    stride: int          # A = floor(m^c / eps)
    width: int           # B = floor(m^c)
    residues: frozenset[int]
    separator: frozenset[int]
    certified_bound: float
    maxindeg: int
    epsilon: float

    def to_json(self) -> dict:
        return {
            "scale": self.scale,
            "stride": self.stride,
            "width": self.width,
            "separator": sorted(self.separator),
            "certified_bound": self.certified_bound,
            "maxindeg": self.maxindeg,
            "epsilon": self.epsilon,
            "class_edges": sorted(self.class_edges),
        }


def build_separator(g: Dag, eps: float) -> ShallowingResult:
    """Separator S with |S| <= eps * (d + 1) * m and certified codepth bound.

    S collects the starting vertices of the chosen scale class plus every
    vertex congruent to 0..B-1 modulo the stride A.
    """
    chosen = pigeonhole_scale(g, eps)
    m = g.vertex_count
    c = chosen.c
    stride = max(1, int(mp_power(m, c) / eps))  # A = floor(m^c / eps)
    width = max(1, pow_floor(m, c))             # B = floor(m^c)
    residues = frozenset(x for x in range(m) if x % stride < width)
    separator = frozenset(u for u, _ in chosen.edges) | residues
    bound = (2.0 / eps) * float(mp_power(m, 1 - eps))
    result = ShallowingResult(
        scale=c,
        class_edges=chosen.edges,
        stride=stride,
        width=width,
        residues=residues,
        separator=separator,
        certified_bound=bound,
        maxindeg=chosen.maxindeg,
        epsilon=eps,
    )
    if not exact_le(len(separator), eps * (chosen.maxindeg + 1), m):
        raise GraphError(
            f"separator size {len(separator)} exceeds eps*(d+1)*m at eps={eps}"
        )
    return result


def separator_with_target_size(g: Dag, eps_target: float) -> ShallowingResult:
    """Convenience rescaling: delivers |S| <= eps_target * m by running the
    construction at eps_target / (d + 1)."""
    d = degree_stats(g).maxindeg
    return build_separator(g, eps_target / (d + 1))


@dataclass(frozen=True)
class VerifyReport:
    size: int
    size_limit: float
    size_ok: bool
    codepth_value: int
    codepth_bound: float
    codepth_ok: bool

    @property
    def passed(self) -> bool:
        return self.size_ok and self.codepth_ok


def verify_shallowing(g: Dag, result: ShallowingResult, eps: float) -> VerifyReport:
    """Recompute both guarantees from scratch, trusting nothing in ``result``."""
    m = g.vertex_count
    d = degree_stats(g).maxindeg
    size = len(result.separator)
    size_ok = exact_le(size, eps * (d + 1), m)
    value = codepth(g, result.separator) if size < m else 0
    bound = (2.0 / eps) * float(mp_power(m, 1 - eps))
    return VerifyReport(
        size=size,
        size_limit=eps * (d + 1) * m,
        size_ok=size_ok,
        codepth_value=value,
        codepth_bound=bound,
        codepth_ok=value <= bound,
    )
