"""Depth functions: construction, validation, enumeration.

A depth function assigns a level to every vertex so that levels strictly
decrease along edges unless the source sits at level 0, and every
positive-level vertex has some out-neighbor exactly one level down.  Levels
live in the naturals; the value ``INF`` (serialized as -1) only appears for
the edge-subset variant on cyclic carriers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .dag import Dag, Edge, degree_stats, topological_order
from .errors import BudgetError, GraphError
from .rationals import exact_le, floor_scaled

Levels = tuple[int, ...]

INF = -1

DEFAULT_ENUMERATION_BUDGET = 2_000_000


@dataclass(frozen=True)
class DepthParams:
    """Size bound epsilon in (0, 1] and level cap rho."""

    epsilon: float
    rho: int

    def __post_init__(self) -> None:
        if not 0 < self.epsilon <= 1:
            raise ValueError("epsilon must be in (0, 1]")
        if self.rho < 0:
            raise ValueError("rho must be >= 0")


def delta_s(g: Dag, s: Iterable[int]) -> Levels:
    """Canonical depth function: maximal path distance to ``s`` or a sink.

    Level 0 on ``s`` and on sinks; elsewhere the maximal length of a
    directed path that ends in ``s`` or at a sink and whose interior stays
    outside ``s``.  Both ``s`` empty and ``s`` = all vertices are legal.
    """
    banned = frozenset(s)
    order = topological_order(g)
    levels = [0] * g.vertex_count
    for v in reversed(order):
        if v in banned or not g.out_adj[v]:
            continue
        # Stopping at a neighbor in s contributes 1; its own level is 0,
        # so one formula covers both the stop and the continue case.
        levels[v] = 1 + max(levels[w] for w in g.out_adj[v])
    return tuple(levels)


def delta_prime(g: Dag, d_set: Iterable[Edge]) -> Levels:
    """Depth function induced by an edge subset D: longest path to a sink
    of (V, D); ``INF`` for vertices that reach a directed cycle of (V, D).
    """
    edges = frozenset(tuple(e) for e in d_set)
    extra = edges - g.edges
    if extra:
        raise GraphError(f"D contains edges outside the graph: {sorted(extra)[:3]}")
    m = g.vertex_count
    sub = Dag(m, edges)
    # Peel vertices whose whole out-cone is already peeled; survivors reach
    # a cycle of (V, D).
    pending = [len(a) for a in sub.out_adj]
    levels = [INF] * m
    stack = [v for v in range(m) if pending[v] == 0]
    for v in stack:
        levels[v] = 0
    while stack:
        v = stack.pop()
        if sub.out_adj[v]:
            levels[v] = 1 + max(levels[w] for w in sub.out_adj[v])
        for u in sub.in_adj[v]:
            pending[u] -= 1
            if pending[u] == 0:
                stack.append(u)
    return tuple(levels)


def is_depth_function(g: Dag, f: Levels) -> bool:
    """Check the two defining conditions directly; ``f`` must be finite."""
    if len(f) != g.vertex_count:
        raise ValueError("level vector has wrong length")
    if any(x < 0 for x in f):
        raise ValueError("levels must be finite naturals")
    for a, b in g.edges:
        if f[a] != 0 and f[a] <= f[b]:
            return False
    for a in range(g.vertex_count):
        if f[a] != 0 and not any(f[b] == f[a] - 1 for b in g.out_adj[a]):
            return False
    return True


def is_eps_rho_depth_function(g: Dag, f: Levels, p: DepthParams) -> bool:
    """Depth function with max level <= rho and few non-sink zeros.

    The size comparison ``|f^-1(0) \\ sinks| <= eps * m`` is exact rational.
    """
    if not is_depth_function(g, f):
        return False
    if max(f) > p.rho:
        return False
    sinks = degree_stats(g).out_vertices
    zeros = sum(1 for v, x in enumerate(f) if x == 0 and v not in sinks)
    return exact_le(zeros, p.epsilon, g.vertex_count)


def extract_depth_set(g: Dag, f: Levels) -> frozenset[Edge]:
    """Edge subset D with |D| <= m and ``delta_prime(g, D) == f``.

    Picks, for every positive-level vertex, the smallest-index out-neighbor
    one level down (any admissible choice works; smallest index keeps the
    result deterministic).
    """
    if not is_depth_function(g, f):
        raise GraphError("f is not a depth function for g")
    chosen = []
    for v, x in enumerate(f):
        if x == 0:
            continue
        succ = next(w for w in g.out_adj[v] if f[w] == x - 1)
        chosen.append((v, succ))
    return frozenset(chosen)


def enumerate_depth_functions(
    g: Dag, p: DepthParams, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> Iterator[Levels]:
    """Yield every (eps, rho)-depth function of ``g``, lexicographically.

    Backtracks over level vectors in vertex order with edge-consistency
    pruning; refuses up front if the raw space ``(rho + 1) ** m`` exceeds
    the budget.  Works on cyclic carriers too (the definition does not need
    acyclicity).
    """
    m = g.vertex_count
    rho = p.rho
    if (rho + 1) ** m > budget:
        raise BudgetError(
            f"depth-function space (rho + 1) ** m = {(rho + 1) ** m} exceeds budget {budget}",
            required=(rho + 1) ** m,
            budget=budget,
        )
    out_adj = g.out_adj
    in_adj = g.in_adj
    sinks = [not out_adj[v] for v in range(m)]
    zero_limit = floor_scaled(p.epsilon, m)
    # Vertex u's "has a successor one level down" condition becomes checkable
    # once all its out-neighbors carry levels; trigger it at that moment.
    trigger: list[list[int]] = [[] for _ in range(m)]
    for u in range(m):
        if out_adj[u]:
            trigger[max(u, max(out_adj[u]))].append(u)

    levels = [0] * m

    def candidates(v: int) -> Iterable[int]:
        if sinks[v]:
            return (0,)
        if max(out_adj[v]) < v:
            top = 1 + max(levels[w] for w in out_adj[v])
            return (0, top) if top <= rho else (0,)
        return range(rho + 1)

    def consistent(v: int, x: int) -> bool:
        if x != 0 and any(levels[w] >= x for w in out_adj[v] if w < v):
            return False
        for u in in_adj[v]:
            if u < v and levels[u] != 0 and levels[u] <= x:
                return False
        for u in trigger[v]:
            lu = x if u == v else levels[u]
            if lu != 0 and not any(
                (x if w == v else levels[w]) == lu - 1 for w in out_adj[u]
            ):
                return False
        return True

    def walk(v: int, zeros: int) -> Iterator[Levels]:
        if v == m:
            yield tuple(levels)
            return
        for x in candidates(v):
            z = zeros + (1 if x == 0 and not sinks[v] else 0)
            if z > zero_limit:
                continue
            if not consistent(v, x):
                continue
            levels[v] = x
            yield from walk(v + 1, z)
        levels[v] = 0

    return walk(0, 0)


def admits_depth_function(
    g: Dag, p: DepthParams, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> bool:
    """Existence check; stops at the first witness."""
    return next(enumerate_depth_functions(g, p, budget), None) is not None


def levels_to_json(f: Levels) -> list[int]:
    return list(f)


def levels_from_json(data: list[int]) -> Levels:
    return tuple(int(x) for x in data)
