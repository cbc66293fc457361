from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dagex.laws import (
    FiniteLaw,
    binary_entropy,
    exceedance_probability,
    kl_divergence,
    mixture,
    pinsker_gap,
    shannon_entropy,
)


def test_law_validation():
    with pytest.raises(ValueError):
        FiniteLaw.from_mapping({0: Fraction(1, 3), 1: Fraction(1, 3)})
    law = FiniteLaw.from_counts({3: 1, 1: 2, 2: 1})
    assert law.outcomes == (1, 2, 3)
    assert law.probs == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))


def test_entropy_values():
    assert shannon_entropy(FiniteLaw.point_mass(5)) == 0.0
    assert shannon_entropy(FiniteLaw.uniform(range(8))) == pytest.approx(3.0)
    assert binary_entropy(0.5) == pytest.approx(1.0)
    assert binary_entropy(0.0) == 0.0 and binary_entropy(1.0) == 0.0


def test_kl_identity_and_domination():
    a = FiniteLaw.from_counts({0: 3, 1: 1})
    b = FiniteLaw.from_counts({0: 1, 1: 3})
    c = mixture(a, b)
    # joint divergence to the midpoint equals the entropy gap
    lhs = kl_divergence(a, c) + kl_divergence(b, c)
    rhs = 2 * shannon_entropy(c) - shannon_entropy(a) - shannon_entropy(b)
    assert lhs == pytest.approx(rhs, abs=1e-12)
    with pytest.raises(ValueError):
        kl_divergence(FiniteLaw.point_mass(0), FiniteLaw.point_mass(1))


def test_exceedance_exact():
    x = FiniteLaw.uniform((0, 1))
    y = FiniteLaw.uniform((0, 1))
    assert exceedance_probability(x, y) == Fraction(1, 4)
    assert exceedance_probability(FiniteLaw.point_mass(2), FiniteLaw.point_mass(1)) == 1
    assert exceedance_probability(FiniteLaw.point_mass(1), FiniteLaw.point_mass(1)) == 0


def test_pinsker_gap_point_masses():
    gap, bound = pinsker_gap(FiniteLaw.point_mass(0), FiniteLaw.point_mass(1))
    assert gap == pytest.approx(2.0)
    assert bound == pytest.approx(0.5 + 2 * math.sqrt(2.0))


counts = st.dictionaries(st.integers(0, 40), st.integers(1, 9), min_size=1, max_size=8)


@settings(max_examples=200, deadline=None)
@given(counts, counts)
def test_gap_nonnegative_and_bounds_exceedance(ca, cb):
    a = FiniteLaw.from_counts(ca)
    b = FiniteLaw.from_counts(cb)
    gap, bound = pinsker_gap(a, b)
    assert gap >= -1e-12
    assert float(exceedance_probability(a, b)) <= bound + 1e-9


@settings(max_examples=100, deadline=None)
@given(counts, counts)
def test_exceedance_matches_double_sum(ca, cb):
    a = FiniteLaw.from_counts(ca)
    b = FiniteLaw.from_counts(cb)
    direct = sum(
        pa * pb
        for xa, pa in zip(a.outcomes, a.probs)
        for xb, pb in zip(b.outcomes, b.probs)
        if xa > xb
    )
    assert exceedance_probability(a, b) == direct


@settings(max_examples=100, deadline=None)
@given(counts, counts)
def test_mixture_entropy_dominates(ca, cb):
    a = FiniteLaw.from_counts(ca)
    b = FiniteLaw.from_counts(cb)
    c = mixture(a, b)
    assert sum(c.probs) == 1
    assert 2 * shannon_entropy(c) >= shannon_entropy(a) + shannon_entropy(b) - 1e-12
    assert math.isfinite(shannon_entropy(c))
