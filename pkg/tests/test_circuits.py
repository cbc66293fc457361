from __future__ import annotations

from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from dagex.circuits import (
    AdviceCircuit,
    Circuit,
    advice_bit_budget,
    advice_computes,
    evaluate,
    search_depth1_advice_shift,
    shift_bit_count,
    shift_fn,
)
from dagex.dag import Dag
from dagex.errors import BudgetError, GraphError


def xor_circuit() -> Circuit:
    # vertices 0,1 inputs; 2 = XOR
    return Circuit(Dag.of(3, [(0, 2), (1, 2)]), {2: (0, 1, 1, 0)})


def test_evaluate_xor():
    c = xor_circuit()
    assert c.input_order == (0, 1)
    assert c.output_order == (2,)
    for a, b in product((0, 1), repeat=2):
        assert evaluate(c, (a, b)) == (a ^ b,)


def test_table_index_bit_order():
    # gate 3 reads (0, 1, 2); vertex 0 is the least significant bit
    table = tuple((i >> 2) & 1 for i in range(8))  # projects onto vertex 2
    c = Circuit(Dag.of(4, [(0, 3), (1, 3), (2, 3)]), {3: table})
    for bits in product((0, 1), repeat=3):
        assert evaluate(c, bits) == (bits[2],)


def test_constant_gate_and_validation():
    c = Circuit(Dag.of(2, [(0, 1)]), {0: (1,), 1: (0, 1)})
    assert c.input_count == 0
    assert evaluate(c, ()) == (1,)
    with pytest.raises(GraphError):
        Circuit(Dag.of(3, [(0, 2), (1, 2)]), {2: (0, 1)})  # wrong table size
    with pytest.raises(GraphError):
        Circuit(Dag.of(2, [(0, 1)]), {})  # wired vertex without a gate
    with pytest.raises(GraphError):
        Circuit(Dag.of(3, [(0, 2), (1, 2)]), {2: (0, 1, 1, 0)}, output_order=(0, 2))


def random_circuit(rng: np.random.Generator, gate_count: int) -> Circuit:
    inputs = int(rng.integers(1, 4))
    m = inputs + gate_count
    edges = []
    gates = {}
    for v in range(inputs, m):
        arity = int(rng.integers(0, min(v, 3) + 1))
        wires = sorted(rng.choice(v, size=arity, replace=False).tolist())
        edges.extend((int(w), v) for w in wires)
        gates[v] = tuple(int(b) for b in rng.integers(0, 2, size=1 << arity))
    return Circuit(Dag.of(m, edges), gates)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**30))
def test_evaluate_matches_fixpoint_oracle(seed: int):
    rng = np.random.default_rng(seed)
    c = random_circuit(rng, int(rng.integers(1, 8)))
    for bits in product((0, 1), repeat=c.input_count):
        assert evaluate(c, bits) == oracles.fixpoint_evaluate(c, bits)


def test_shift_bit_count():
    assert [shift_bit_count(n) for n in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]


def test_shift_fn_basics():
    assert shift_fn(4, (1, 0, 0, 0), (1, 0)) == (0, 1, 0, 0)
    assert shift_fn(4, (1, 1, 0, 0), (0, 0)) == (1, 1, 0, 0)
    with pytest.raises(ValueError):
        shift_fn(4, (1, 0, 0), (0, 0))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 10), st.integers(0, 2**10 - 1), st.integers(0, 15), st.integers(0, 15))
def test_double_shift_composes(n: int, word: int, k1: int, k2: int):
    l = shift_bit_count(n)
    f = tuple(word >> i & 1 for i in range(n))
    k1 %= max(1, 1 << l)
    k2 %= max(1, 1 << l)
    bits1 = tuple(k1 >> i & 1 for i in range(l))
    bits2 = tuple(k2 >> i & 1 for i in range(l))
    once = shift_fn(n, shift_fn(n, f, bits1), bits2)
    total = (k1 + k2) % n
    expect = tuple(f[(j - total) % n] for j in range(n))
    assert once == expect


def selector_advice() -> AdviceCircuit:
    # inputs 0,1,2 standard, 3 advice; gate 4 = (s0 AND t) OR (s1 AND NOT t)
    table = tuple((a & t) | (b & (1 - t)) for i in range(8) for a, b, t in [(i & 1, i >> 1 & 1, i >> 2 & 1)])
    dag = Dag.of(5, [(0, 4), (1, 4), (3, 4)])
    # gate 4 reads (0, 1, 3): bit0 = v0, bit1 = v1, bit2 = v3
    circ = Circuit(dag, {4: table}, output_order=(4,))
    return AdviceCircuit(circ, std_inputs=(0, 1, 2), adv_inputs=(3,))


def test_advice_computes_hand_examples():
    a = selector_advice()
    # target: output the OR of the first two bits -- some selector choice works
    assert advice_computes(a, lambda s: (s[0] | s[1],))
    # AND is also reachable: pick the coordinate that is 0 when any is
    assert advice_computes(a, lambda s: (s[0] & s[1],))
    # XOR is not: on s = (1, 1) both selectable coordinates read 1
    assert not advice_computes(a, lambda s: (s[0] ^ s[1],))


def test_advice_budget_refusal():
    a = selector_advice()
    with pytest.raises(BudgetError):
        advice_computes(a, lambda s: (0,), budget=4)


def test_advice_partition_validated():
    c = xor_circuit()
    with pytest.raises(GraphError):
        AdviceCircuit(c, std_inputs=(0,), adv_inputs=(0, 1))
    with pytest.raises(GraphError):
        AdviceCircuit(c, std_inputs=(0,), adv_inputs=())


def test_advice_bit_budget():
    assert advice_bit_budget(10, 1.0) == 10
    assert advice_bit_budget(10, 0.5) == 10
    assert advice_bit_budget(9, 0.1) == 1
    assert advice_bit_budget(9, 0.0) == 0


def test_depth1_shift_search_n1():
    rep = search_depth1_advice_shift(1, 0.0, indeg_cap=1, budget=500_000)
    assert rep.satisfiable
    assert rep.adv_bits == 0


def test_depth1_shift_search_budget():
    with pytest.raises(BudgetError):
        search_depth1_advice_shift(4, 0.5, indeg_cap=2, budget=100)
