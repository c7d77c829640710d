from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kahlerstar.combinatorics import alpha
from kahlerstar.scalars import PoleError, RationalH, eval_at, eval_float, expand_series, squarefree_decomposition

from conftest import rational_h

h = RationalH.h()


def test_add_and_cancel():
    assert h + h == 2 * h
    assert (h * h / (1 - h)) * (1 - h) == h * h


def test_division_gives_alpha3():
    assert h ** 3 / ((1 - h) * (1 - 2 * h)) == alpha(3)


def test_series_examples():
    assert list(expand_series(alpha(2), 4).coeffs) == [0, 0, 1, 1, 1]
    assert list(expand_series(1 / (1 - 2 * h), 3).coeffs) == [1, 2, 4, 8]
    assert list(expand_series(alpha(3), 5).coeffs) == [0, 0, 0, 1, 3, 7]


def test_evaluation_examples():
    assert eval_at(alpha(2), Fraction(1, 3)) == Fraction(1, 6)
    assert eval_at(alpha(1), Fraction(1, 5)) == Fraction(1, 5)
    with pytest.raises(PoleError):
        eval_at(alpha(4), Fraction(1, 3))


def test_series_of_pole_at_zero_raises():
    with pytest.raises(PoleError):
        expand_series(1 / h, 3)


def test_canonical_equality_ignores_representation():
    assert RationalH((2, 2), (4,)) == RationalH((1, 1), (2,))
    assert RationalH((0, 1), (0, 2)) == RationalH.coerce(Fraction(1, 2))


@given(rational_h(), rational_h(), rational_h())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if not b.is_zero():
        assert (a / b) * b == a


@given(rational_h(), rational_h())
def test_series_is_a_ring_map(a, b):
    K = 5
    assert expand_series(a * b, K) == expand_series(a, K) * expand_series(b, K)
    assert expand_series(a + b, K) == expand_series(a, K) + expand_series(b, K)


@given(rational_h(), st.fractions(min_value=Fraction(1, 50), max_value=Fraction(1, 20)))
def test_exact_and_float_evaluation_agree(a, h0):
    try:
        exact = eval_at(a, h0)
    except PoleError:
        return
    assert abs(float(exact) - eval_float(a, float(h0))) <= 1e-9 * (1 + abs(float(exact)))


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.integers(1, 3))
def test_squarefree_decomposition_reassembles(roots, mult):
    from kahlerstar.scalars import pmul

    p = (Fraction(1),)
    for r in roots:
        for _ in range(mult):
            p = pmul(p, (Fraction(-r), Fraction(1)))
    prod = (Fraction(1),)
    for i, f in enumerate(squarefree_decomposition(p), start=1):
        for _ in range(i):
            prod = pmul(prod, f)
    assert tuple(prod) == tuple(p)
