from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from dagex.dag import (
    Dag,
    codepth,
    degree_stats,
    graph_depth,
    induced_subgraph,
    is_acyclic,
    topological_order,
    topological_order_or_none,
    topological_relabel,
)
from dagex.errors import GraphError


def chain(m: int) -> Dag:
    return Dag.of(m, [(i, i + 1) for i in range(m - 1)])


def test_construction_rejects_bad_edges():
    with pytest.raises(GraphError):
        Dag.of(3, [(0, 0)])
    with pytest.raises(GraphError):
        Dag.of(3, [(0, 3)])
    with pytest.raises(GraphError):
        Dag.of(0, [])


def test_adjacency_sorted_and_deduped():
    g = Dag.of(4, [(0, 2), (0, 1), (0, 2), (2, 3)])
    assert g.out_adj[0] == (1, 2)
    assert g.in_adj[2] == (0,)
    assert len(g.edges) == 3


def test_topological_order_on_cycle():
    g = Dag.of(3, [(0, 1), (1, 2), (2, 0)])
    assert topological_order_or_none(g) is None
    assert not is_acyclic(g)
    with pytest.raises(GraphError):
        topological_order(g)


def test_codepth_examples():
    g = chain(4)
    assert codepth(g, frozenset()) == 3
    assert codepth(g, frozenset({1})) == 1
    assert codepth(g, frozenset({0, 2})) == 0
    assert graph_depth(g) == 3


def test_codepth_rejects_full_set_and_cycles():
    g = chain(3)
    with pytest.raises(GraphError):
        codepth(g, frozenset({0, 1, 2}))
    with pytest.raises(GraphError):
        codepth(Dag.of(2, [(0, 1), (1, 0)]), frozenset())


def test_degree_stats():
    g = Dag.of(4, [(0, 1), (0, 2), (1, 2), (3, 2)])
    s = degree_stats(g)
    assert s.outdeg == (2, 1, 0, 1)
    assert s.indeg == (0, 1, 3, 0)
    assert s.maxdeg == 3
    assert s.in_vertices == frozenset({0, 3}) and s.out_vertices == frozenset({2})


def test_induced_subgraph_and_relabel():
    g = Dag.of(5, [(0, 2), (2, 4), (1, 3)])
    sub, labels = induced_subgraph(g, frozenset({0, 2, 4}))
    assert labels == (0, 2, 4)
    assert sub.edges == frozenset({(0, 1), (1, 2)})
    relabeled, perm = topological_relabel(g)
    assert all(perm[u] < perm[v] for u, v in g.edges)
    assert relabeled.vertex_count == 5


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**15 - 1), st.integers(0, 63))
def test_codepth_matches_path_enumeration(mask: int, ban_mask: int):
    m = 6
    pairs = [(u, v) for u in range(m) for v in range(m) if u != v]
    edges = [p for i, p in enumerate(pairs[:15]) if mask >> i & 1]
    g = Dag.of(m, edges)
    if oracles.has_cycle_dfs(g):
        assert not is_acyclic(g)
        return
    assert is_acyclic(g)
    banned = frozenset(v for v in range(m) if ban_mask >> v & 1)
    if len(banned) == m:
        return
    assert codepth(g, banned) == oracles.codepth_bruteforce(g, banned)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**30))
def test_random_dags_acyclic_and_dp_agrees(seed: int):
    import numpy as np

    g = oracles.random_dag(np.random.default_rng(seed), 8, 0.35)
    assert is_acyclic(g)
    assert codepth(g, frozenset()) == oracles.codepth_recursive(g)
