from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kahlerstar.radicals import Radical, RadicalClashError
from kahlerstar.scalars import RationalH, eval_float

h = RationalH.h()


def test_canonical_forms():
    assert Radical.sqrt(4) == Radical.rational(2)
    assert Radical.sqrt(Fraction(1, 2)) == Radical(Fraction(1, 2), 2)
    assert Radical.sqrt(h ** 2) == Radical.rational(h)
    assert Radical.sqrt(h * (1 - h) ** 2).rho == Radical.sqrt(h).rho


def test_branch_is_positive_for_small_h():
    for val in (h / (1 - h), (1 - 2 * h) / h, h ** 3 / (1 - 3 * h)):
        r = Radical.sqrt(val)
        assert r.to_float(0.01) > 0
        assert r.to_float(0.01) == pytest.approx(eval_float(val, 0.01) ** 0.5)


def test_clash_is_an_error():
    with pytest.raises(RadicalClashError):
        Radical.sqrt(2) + Radical.sqrt(3)
    assert Radical.sqrt(2) + Radical.sqrt(8) == Radical(3, 2)


@given(st.integers(1, 400), st.integers(1, 400))
def test_product_of_roots(a, b):
    assert (Radical.sqrt(a) * Radical.sqrt(b)).squared() == a * b
    assert Radical.sqrt(a).squared() == a


@given(st.fractions(min_value=Fraction(1, 100), max_value=100, max_denominator=1000))
def test_specialization(q):
    r = Radical.sqrt(q * h)
    assert r.at(Fraction(1, 4)).squared() == q / 4


@given(st.integers(-10 ** 6, 10 ** 6).filter(bool))
def test_squarefree_split(n):
    from kahlerstar.radicals import _squarefree_int

    out, inside = _squarefree_int(n)
    assert out * out * inside == n
    assert all(inside % (p * p) for p in range(2, 200))
