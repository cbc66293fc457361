"""Boolean circuits on dags, the cyclic-shift function, and advice circuits.

A circuit pairs an acyclic graph with a truth table per gate vertex.  Gate
tables are indexed by the gate's in-neighbors in ascending vertex order, the
smallest in-neighbor being the least significant bit.  Indeg-0 vertices
without a table are the circuit inputs; indeg-0 vertices carrying a 0-ary
table act as constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Mapping, Sequence

from .dag import Dag, degree_stats, topological_order
from .errors import BudgetError, GraphError

Bits = tuple[int, ...]


@dataclass(frozen=True)
class Circuit:
    dag: Dag
    gates: Mapping[int, Bits]
    input_order: tuple[int, ...] = ()
    output_order: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        topological_order(self.dag)  # rejects cyclic wiring
        stats = degree_stats(self.dag)
        inputs = sorted(v for v in stats.in_vertices if v not in self.gates)
        for v in range(self.dag.vertex_count):
            if v in self.gates:
                table = self.gates[v]
                if len(table) != 1 << stats.indeg[v]:
                    raise GraphError(
                        f"gate {v} table length {len(table)} != 2^indeg {1 << stats.indeg[v]}"
                    )
                if any(bit not in (0, 1) for bit in table):
                    raise GraphError(f"gate {v} table is not binary")
            elif stats.indeg[v] != 0:
                raise GraphError(f"vertex {v} has inputs but no gate")
        if not self.input_order:
            object.__setattr__(self, "input_order", tuple(inputs))
        elif sorted(self.input_order) != inputs:
            raise GraphError("input_order must enumerate exactly the input vertices")
        sinks = stats.out_vertices
        if not self.output_order:
            object.__setattr__(self, "output_order", tuple(sorted(sinks)))
        elif len(set(self.output_order)) != len(self.output_order) or not set(
            self.output_order
        ) <= sinks:
            raise GraphError("output_order must be a duplicate-free subset of the sinks")

    @property
    def input_count(self) -> int:
        return len(self.input_order)


def evaluate(c: Circuit, inputs: Sequence[int]) -> Bits:
    """Feed ``inputs`` (aligned with ``input_order``) through the circuit.

    Gates fire in topological order; the unique consistent assignment is
    returned restricted to ``output_order``.
    """
    if len(inputs) != c.input_count:
        raise ValueError(f"expected {c.input_count} input bits, got {len(inputs)}")
    values = [0] * c.dag.vertex_count
    for v, bit in zip(c.input_order, inputs):
        if bit not in (0, 1):
            raise ValueError("inputs must be bits")
        values[v] = bit
    for v in topological_order(c.dag):
        if v not in c.gates:
            continue
        index = 0
        for position, w in enumerate(c.dag.in_adj[v]):
            index |= values[w] << position
        values[v] = c.gates[v][index]
    return tuple(values[v] for v in c.output_order)


def shift_bit_count(n: int) -> int:
    """ceil(log2 n): number of shift-amount bits; 0 for n = 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (n - 1).bit_length()


def shift_fn(n: int, f: Sequence[int], k: Sequence[int]) -> Bits:
    """Cyclically shift the n-bit word ``f`` by the integer encoded in ``k``.

    Output bit j is f((j - k) mod n); k is read least-significant-bit first
    and may exceed n - 1.
    """
    if len(f) != n:
        raise ValueError(f"f must have {n} bits")
    if len(k) != shift_bit_count(n):
        raise ValueError(f"k must have {shift_bit_count(n)} bits")
    amount = sum(bit << i for i, bit in enumerate(k))
    return tuple(f[(j - amount) % n] for j in range(n))


@dataclass(frozen=True)
class AdviceCircuit:
    """Circuit whose inputs split into standard and advice vertices."""

    circuit: Circuit
    std_inputs: tuple[int, ...]
    adv_inputs: tuple[int, ...]

    def __post_init__(self) -> None:
        std, adv = set(self.std_inputs), set(self.adv_inputs)
        if std & adv:
            raise GraphError("standard and advice inputs must be disjoint")
        if std | adv != set(self.circuit.input_order):
            raise GraphError("std + adv must partition the circuit inputs")

    def run(self, s: Sequence[int], t: Sequence[int]) -> Bits:
        assignment = dict(zip(self.std_inputs, s))
        assignment.update(zip(self.adv_inputs, t))
        return evaluate(self.circuit, [assignment[v] for v in self.circuit.input_order])


def advice_computes(
    a: AdviceCircuit,
    target: Callable[[Bits], Bits],
    budget: int = 1 << 22,
) -> bool:
    """True iff for every standard input some advice word hits the target."""
    s_bits = len(a.std_inputs)
    t_bits = len(a.adv_inputs)
    if (1 << s_bits) * (1 << t_bits) > budget:
        raise BudgetError(
            "advice search space too large", (1 << s_bits) * (1 << t_bits), budget
        )
    for s in product((0, 1), repeat=s_bits):
        want = target(s)
        if not any(a.run(s, t) == want for t in product((0, 1), repeat=t_bits)):
            return False
    return True


def _shift_target(n: int) -> Callable[[Bits], Bits]:
    l = shift_bit_count(n)

    def target(s: Bits) -> Bits:
        return shift_fn(n, s[:n], s[n : n + l])

    return target


def advice_bit_budget(std_count: int, eps: float) -> int:
    """Largest advice count a with a <= eps * (std + a), capped at std."""
    if eps >= 1:
        return std_count
    return min(std_count, int(eps * std_count / (1 - eps)))


@dataclass(frozen=True)
class ShiftSearchReport:
    n: int
    epsilon: float
    indeg_cap: int
    adv_bits: int
    space_size: int
    tried: int
    satisfiable: bool
    witness_wiring: tuple[tuple[int, ...], ...] | None
    witness_tables: tuple[Bits, ...] | None


def _gate_choices(in_count: int, indeg_cap: int) -> list[tuple[tuple[int, ...], Bits]]:
    choices = []
    for arity in range(min(indeg_cap, in_count) + 1):
        for wires in combinations(range(in_count), arity):
            for table in product((0, 1), repeat=1 << arity):
                choices.append((wires, table))
    return choices


def search_depth1_advice_shift(
    n: int, eps: float, indeg_cap: int, budget: int = 500_000
) -> ShiftSearchReport:
    """Exhaust depth-1 advice circuits for the n-bit cyclic shift.

    Every output is a single gate reading at most ``indeg_cap`` wires
    straight from the inputs.  The full wiring-and-table space is counted
    first and refused when it exceeds the budget; otherwise every candidate
    is decided against the shift target.
    """
    std = n + shift_bit_count(n)
    adv = advice_bit_budget(std, eps)
    in_count = std + adv
    per_output = _gate_choices(in_count, indeg_cap)
    space = len(per_output) ** n
    if space > budget:
        raise BudgetError(
            f"depth-1 search space {space} exceeds budget {budget}", space, budget
        )
    target = _shift_target(n)
    tried = 0
    for combo in product(per_output, repeat=n):
        tried += 1
        circuit, advice = _assemble_depth1(n, std, adv, combo)
        if advice_computes(advice, target):
            return ShiftSearchReport(
                n=n,
                epsilon=eps,
                indeg_cap=indeg_cap,
                adv_bits=adv,
                space_size=space,
                tried=tried,
                satisfiable=True,
                witness_wiring=tuple(w for w, _ in combo),
                witness_tables=tuple(t for _, t in combo),
            )
    return ShiftSearchReport(
        n=n,
        epsilon=eps,
        indeg_cap=indeg_cap,
        adv_bits=adv,
        space_size=space,
        tried=tried,
        satisfiable=False,
        witness_wiring=None,
        witness_tables=None,
    )


def _assemble_depth1(
    n: int, std: int, adv: int, combo: Sequence[tuple[tuple[int, ...], Bits]]
) -> tuple[Circuit, AdviceCircuit]:
    in_count = std + adv
    edges = set()
    gates: dict[int, Bits] = {}
    for out_index, (wires, table) in enumerate(combo):
        gate_vertex = in_count + out_index
        # gate table is indexed by ascending in-neighbor id, which matches
        # the ascending wire tuple from combinations
        for w in wires:
            edges.add((w, gate_vertex))
        gates[gate_vertex] = table
    dag = Dag.of(in_count + n, edges)
    # unwired inputs are sinks too; the designated outputs are the gates only
    circuit = Circuit(
        dag,
        gates,
        input_order=tuple(range(in_count)),
        output_order=tuple(range(in_count, in_count + n)),
    )
    advice = AdviceCircuit(
        circuit,
        std_inputs=tuple(range(std)),
        adv_inputs=tuple(range(std, in_count)),
    )
    return circuit, advice
