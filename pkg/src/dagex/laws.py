"""Finite probability laws: entropy, mixtures, KL, exceedance.

Two numeric modes coexist.  Probabilities (sums, exceedance) can be exact
``Fraction``s; entropy and KL are irrational in general and always come back
as base-2 floats.  Base 2 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

Prob = Fraction | float

FLOAT_MASS_TOL = 1e-12


@dataclass(frozen=True)
class FiniteLaw:
    """Probability law on a finite subset of the naturals.

    ``outcomes`` is sorted strictly increasing; ``probs`` aligns with it.
    Exact mode when every probability is a ``Fraction``.
    """

    outcomes: tuple[int, ...]
    probs: tuple[Prob, ...]

    def __post_init__(self) -> None:
        if len(self.outcomes) != len(self.probs):
            raise ValueError("outcomes and probs must align")
        if not self.outcomes:
            raise ValueError("law needs a nonempty support")
        if any(o < 0 for o in self.outcomes):
            raise ValueError("outcomes must be naturals")
        if any(a >= b for a, b in zip(self.outcomes, self.outcomes[1:])):
            raise ValueError("outcomes must be sorted strictly increasing")
        if any(p < 0 for p in self.probs):
            raise ValueError("probabilities must be nonnegative")
        total = sum(self.probs)
        if self.is_exact:
            if total != 1:
                raise ValueError(f"total mass is {total}, not 1")
        elif abs(total - 1.0) > FLOAT_MASS_TOL:
            raise ValueError(f"total mass {total} deviates from 1 beyond tolerance")

    @property
    def is_exact(self) -> bool:
        return all(isinstance(p, Fraction) for p in self.probs)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, Prob]) -> "FiniteLaw":
        items = sorted(mapping.items())
        return cls(tuple(o for o, _ in items), tuple(p for _, p in items))

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> "FiniteLaw":
        total = sum(counts.values())
        if total <= 0:
            raise ValueError("counts must have positive total")
        items = sorted((o, c) for o, c in counts.items() if c > 0)
        return cls(
            tuple(o for o, _ in items),
            tuple(Fraction(c, total) for _, c in items),
        )

    @classmethod
    def point_mass(cls, outcome: int) -> "FiniteLaw":
        return cls((outcome,), (Fraction(1),))

    @classmethod
    def uniform(cls, outcomes: Iterable[int]) -> "FiniteLaw":
        support = tuple(sorted(set(outcomes)))
        return cls(support, tuple(Fraction(1, len(support)) for _ in support))

    def prob(self, outcome: int) -> Prob:
        try:
            return self.probs[self.outcomes.index(outcome)]
        except ValueError:
            return Fraction(0) if self.is_exact else 0.0


def shannon_entropy(law: FiniteLaw) -> float:
    """H in bits, with the 0*log(0) = 0 convention."""
    return -sum(float(p) * math.log2(float(p)) for p in law.probs if p > 0)


def binary_entropy(x: float) -> float:
    """Entropy of a {0, 1}-valued law with success probability ``x``."""
    if not 0 <= x <= 1:
        raise ValueError("x must be in [0, 1]")
    if x == 0 or x == 1:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def mixture(a: FiniteLaw, b: FiniteLaw) -> FiniteLaw:
    """Even mixture: pointwise average over the union support."""
    combined: dict[int, Prob] = {}
    for law in (a, b):
        for o, p in zip(law.outcomes, law.probs):
            combined[o] = combined.get(o, 0) + p
    if a.is_exact and b.is_exact:
        return FiniteLaw.from_mapping({o: Fraction(p) / 2 for o, p in combined.items()})
    return FiniteLaw.from_mapping({o: float(p) / 2 for o, p in combined.items()})


def kl_divergence(a: FiniteLaw, c: FiniteLaw) -> float:
    """D(a || c) in bits; requires c to dominate a on a's support."""
    total = 0.0
    for o, p in zip(a.outcomes, a.probs):
        if p == 0:
            continue
        q = c.prob(o)
        if q == 0:
            raise ValueError(f"c has zero mass at outcome {o} where a is positive")
        total += float(p) * math.log2(float(p) / float(q))
    return total


def pinsker_gap(a: FiniteLaw, b: FiniteLaw) -> tuple[float, float]:
    """(gap, bound): gap = 2H(mixture) - H(a) - H(b), bound = 1/2 + 2*sqrt(gap).

    The gap is nonnegative up to roundoff; tiny negative values are clamped
    before the square root.
    """
    gap = 2 * shannon_entropy(mixture(a, b)) - shannon_entropy(a) - shannon_entropy(b)
    return gap, 0.5 + 2 * math.sqrt(max(gap, 0.0))


def exceedance_probability(a: FiniteLaw, b: FiniteLaw) -> Prob:
    """P(x > y) for independent x ~ a, y ~ b, via prefix sums of b.

    Exact when both laws are exact.
    """
    exact = a.is_exact and b.is_exact
    total: Prob = Fraction(0) if exact else 0.0
    below: Prob = Fraction(0) if exact else 0.0
    j = 0
    for o, p in zip(a.outcomes, a.probs):
        while j < len(b.outcomes) and b.outcomes[j] < o:
            below += b.probs[j]
            j += 1
        total += p * below
    return total
