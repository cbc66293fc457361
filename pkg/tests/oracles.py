"""Independent reference implementations used only as test oracles.

Everything here deliberately avoids the library's own algorithms: cycle
detection is colored DFS instead of Kahn peeling, longest paths come from
explicit path enumeration or memoized recursion instead of the topological
DP, the edge law is enumerated tuple by tuple, and depth functions are
filtered from the raw level-vector product.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from itertools import combinations, product

from dagex.dag import Dag

sys.setrecursionlimit(100_000)


def has_cycle_dfs(g: Dag) -> bool:
    WHITE, GRAY, BLACK = 0, 1, 2
    color = [WHITE] * g.vertex_count

    def visit(v: int) -> bool:
        color[v] = GRAY
        for w in g.out_adj[v]:
            if color[w] == GRAY:
                return True
            if color[w] == WHITE and visit(w):
                return True
        color[v] = BLACK
        return False

    return any(color[v] == WHITE and visit(v) for v in range(g.vertex_count))


def all_directed_paths(g: Dag, banned=frozenset()):
    """Every directed simple path avoiding ``banned``, as vertex tuples."""
    banned = frozenset(banned)

    def extend(path):
        yield path
        for w in g.out_adj[path[-1]]:
            if w not in banned and w not in path:
                yield from extend(path + (w,))

    for v in range(g.vertex_count):
        if v not in banned:
            yield from extend((v,))


def codepth_bruteforce(g: Dag, banned=frozenset()) -> int:
    return max(len(p) - 1 for p in all_directed_paths(g, banned))


def codepth_recursive(g: Dag, banned=frozenset()) -> int:
    """Memoized longest-path (valid on dags), independent of the Kahn DP."""
    banned = frozenset(banned)
    memo: dict[int, int] = {}

    def longest_from(v: int) -> int:
        if v in memo:
            return memo[v]
        best = 0
        for w in g.out_adj[v]:
            if w not in banned:
                best = max(best, 1 + longest_from(w))
        memo[v] = best
        return best

    return max(longest_from(v) for v in range(g.vertex_count) if v not in banned)


def enumerate_edge_law(n: int, edge_map) -> dict[tuple[int, int], Fraction]:
    """Exact outcome map of a sampler by raw (v, r, a, b) enumeration."""
    r_count = n.bit_length() - 1
    law: dict[tuple[int, int], Fraction] = {}
    for r in range(r_count):
        width = 1 << r
        weight = Fraction(1, n * r_count * width * width)
        for v in range(n):
            for a in range(width):
                for b in range(width):
                    edge = edge_map(v, r, a, b)
                    law[edge] = law.get(edge, Fraction(0)) + weight
    return law


def is_depth_function_direct(g: Dag, f) -> bool:
    """The two defining conditions, written from scratch."""
    for a, b in g.edges:
        if not (f[a] > f[b] or f[a] == 0):
            return False
    for a in range(g.vertex_count):
        if f[a] != 0:
            if not any((a, b) in g.edges and f[b] == f[a] - 1 for b in range(g.vertex_count)):
                return False
    return True


def depth_functions_product(g: Dag, eps: float, rho: int):
    """All (eps, rho)-depth functions by filtering the raw level product."""
    m = g.vertex_count
    sinks = {v for v in range(m) if not g.out_adj[v]}
    for f in product(range(rho + 1), repeat=m):
        if not is_depth_function_direct(g, f):
            continue
        zeros = sum(1 for v in range(m) if f[v] == 0 and v not in sinks)
        if Fraction(zeros) <= Fraction(eps) * m:
            yield f


def extender_by_subsets(g: Dag, eps: float, rho: int) -> bool:
    """Quantifier written directly over subsets, with the recursive codepth."""
    m = g.vertex_count
    limit = int(Fraction(eps) * m)
    for size in range(min(limit, m - 1) + 1):
        for s in combinations(range(m), size):
            if codepth_recursive(g, frozenset(s)) < rho:
                return False
    return True


def fixpoint_evaluate(circuit, inputs) -> tuple[int, ...]:
    """Evaluate by sweeping gates until the assignment stabilizes."""
    dag = circuit.dag
    values = {v: None for v in range(dag.vertex_count)}
    for v, bit in zip(circuit.input_order, inputs):
        values[v] = bit
    changed = True
    while changed:
        changed = False
        for v, table in circuit.gates.items():
            ins = [values[w] for w in dag.in_adj[v]]
            if any(x is None for x in ins):
                continue
            index = sum(bit << i for i, bit in enumerate(ins))
            if values[v] != table[index]:
                values[v] = table[index]
                changed = True
    return tuple(values[v] for v in circuit.output_order)


def all_labeled_digraphs(m: int):
    pairs = [(u, v) for u in range(m) for v in range(m) if u != v]
    for mask in range(1 << len(pairs)):
        yield Dag.of(m, [p for i, p in enumerate(pairs) if mask >> i & 1])


def all_labeled_dags(m: int):
    for g in all_labeled_digraphs(m):
        if not has_cycle_dfs(g):
            yield g


def increasing_dags(m: int):
    """All dags with identity topological order: one representative per
    isomorphism class of m-vertex dags."""
    pairs = [(u, v) for u in range(m) for v in range(u + 1, m)]
    for mask in range(1 << len(pairs)):
        yield Dag.of(m, [p for i, p in enumerate(pairs) if mask >> i & 1])


def random_dag(rng, m: int, edge_prob: float = 0.3) -> Dag:
    """Random dag: increasing edges, then a random relabeling."""
    perm = rng.permutation(m)
    edges = [
        (int(perm[u]), int(perm[v]))
        for u in range(m)
        for v in range(u + 1, m)
        if rng.random() < edge_prob
    ]
    return Dag.of(m, edges)


def random_increasing_dag(rng, m: int, maxindeg: int, span: int | None = None) -> Dag:
    """Increasing-edge dag with bounded in-degree and mixed edge lengths."""
    edges = set()
    for v in range(1, m):
        indeg = int(rng.integers(0, maxindeg + 1))
        for _ in range(indeg):
            # mix short and long edges so several scale classes are hit
            if rng.random() < 0.5:
                reach = min(v, 4)
            else:
                reach = v if span is None else min(v, span)
            u = v - 1 - int(rng.integers(0, reach))
            edges.add((u, v))
    # dedupe may push indeg below the draw count but never above maxindeg
    return Dag.of(m, edges)
