"""Graph carrier and path statistics.

Vertices are always the dense range ``0..m-1``.  Edges form a set of ordered
pairs with no self-loops; acyclicity is a computed property, never an
assumption, because raw random graphs may contain backward edges.  Path
lengths are counted in edges, so a single vertex is a path of length 0.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import GraphError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Dag:
    """Immutable directed graph on vertex set ``{0, ..., vertex_count - 1}``.

    Despite the name the edge set may contain cycles; use :func:`is_acyclic`.
    """

    vertex_count: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        m = self.vertex_count
        if m < 1:
            raise GraphError("graphs are nonempty: vertex_count must be >= 1")
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < m and 0 <= v < m):
                raise GraphError(f"edge ({u}, {v}) out of range for {m} vertices")

    @classmethod
    def of(cls, vertex_count: int, edges: Iterable[Iterable[int]] = ()) -> "Dag":
        """Build from any iterable of edge pairs; duplicates collapse."""
        return cls(vertex_count, frozenset((u, v) for u, v in edges))

    @cached_property
    def out_adj(self) -> tuple[tuple[int, ...], ...]:
        lists: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            lists[u].append(v)
        return tuple(tuple(sorted(l)) for l in lists)

    @cached_property
    def in_adj(self) -> tuple[tuple[int, ...], ...]:
        lists: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            lists[v].append(u)
        return tuple(tuple(sorted(l)) for l in lists)

    @cached_property
    def is_acyclic(self) -> bool:
        return topological_order_or_none(self) is not None

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


@dataclass(frozen=True)
class DegreeStats:
    """Per-vertex degree counts plus the source/sink sets and maxima."""

    indeg: tuple[int, ...]
    outdeg: tuple[int, ...]
    deg: tuple[int, ...]
    in_vertices: frozenset[int]   # indeg 0
    out_vertices: frozenset[int]  # outdeg 0
    maxindeg: int
    maxoutdeg: int
    maxdeg: int


def degree_stats(g: Dag) -> DegreeStats:
    indeg = tuple(len(a) for a in g.in_adj)
    outdeg = tuple(len(a) for a in g.out_adj)
    deg = tuple(i + o for i, o in zip(indeg, outdeg))
    return DegreeStats(
        indeg=indeg,
        outdeg=outdeg,
        deg=deg,
        in_vertices=frozenset(v for v, d in enumerate(indeg) if d == 0),
        out_vertices=frozenset(v for v, d in enumerate(outdeg) if d == 0),
        maxindeg=max(indeg),
        maxoutdeg=max(outdeg),
        maxdeg=max(deg),
    )


def topological_order_or_none(g: Dag) -> list[int] | None:
    """Kahn's algorithm; ``None`` if the graph has a directed cycle."""
    m = g.vertex_count
    remaining = [len(a) for a in g.in_adj]
    queue = deque(v for v in range(m) if remaining[v] == 0)
    order: list[int] = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in g.out_adj[v]:
            remaining[w] -= 1
            if remaining[w] == 0:
                queue.append(w)
    return order if len(order) == m else None


def topological_order(g: Dag) -> list[int]:
    order = topological_order_or_none(g)
    if order is None:
        raise GraphError("graph has a directed cycle")
    return order


def is_acyclic(g: Dag) -> bool:
    """True iff ``g`` has no directed cycle."""
    return g.is_acyclic


def codepth(g: Dag, s: Iterable[int]) -> int:
    """Maximum length of a directed path avoiding the vertex set ``s``.

    ``s`` must be a proper subset of the vertices and ``g`` must be acyclic
    (on a dag every directed path is simple, so this is longest-path on the
    induced subgraph, by dynamic programming over a topological order).
    """
    banned = frozenset(s)
    m = g.vertex_count
    for v in banned:
        if not (0 <= v < m):
            raise GraphError(f"vertex {v} out of range")
    if len(banned) == m:
        raise GraphError("s must be a proper subset of the vertices")
    order = topological_order(g)
    dist = [0] * m
    best = 0
    for v in order:
        if v in banned:
            continue
        dv = dist[v]
        if dv > best:
            best = dv
        dv += 1
        for w in g.out_adj[v]:
            if w not in banned and dv > dist[w]:
                dist[w] = dv
    return best


def graph_depth(g: Dag) -> int:
    """Maximum length of a directed path; equals ``codepth(g, ())``."""
    return codepth(g, ())


def induced_subgraph(g: Dag, keep: Iterable[int]) -> tuple[Dag, tuple[int, ...]]:
    """Subgraph induced by ``keep``, relabeled to ``0..|keep|-1``.

    Returns the subgraph and the relabeling map: element ``i`` of the map is
    the original label of new vertex ``i`` (original order preserved).
    """
    kept = sorted(set(keep))
    if not kept:
        raise EmptyKeepError()
    m = g.vertex_count
    if kept[0] < 0 or kept[-1] >= m:
        raise GraphError("keep contains out-of-range vertices")
    new_id = {old: new for new, old in enumerate(kept)}
    edges = frozenset(
        (new_id[u], new_id[v]) for u, v in g.edges if u in new_id and v in new_id
    )
    return Dag(len(kept), edges), tuple(kept)


class EmptyKeepError(GraphError):
    def __init__(self) -> None:
        super().__init__("keep must be nonempty (graphs are nonempty)")


def topological_relabel(g: Dag) -> tuple[Dag, tuple[int, ...]]:
    """Isomorphic copy in which every edge (x, y) has x < y.

    Returns the relabeled graph and the permutation ``perm`` with
    ``perm[old] = new``.
    """
    order = topological_order(g)
    perm = [0] * g.vertex_count
    for position, v in enumerate(order):
        perm[v] = position
    edges = frozenset((perm[u], perm[v]) for u, v in g.edges)
    return Dag(g.vertex_count, edges), tuple(perm)
