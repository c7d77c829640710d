import cmath
from math import factorial

import pytest
from hypothesis import given, strategies as st

from kahlerstar.ring import (
    DomainError,
    MixedSpaceError,
    RingElem,
    Space,
    apply_D,
    apply_D_bar,
    apply_D_bar_by_contraction,
    d_antihol,
    d_hol,
    dbarphi,
    dphi,
    eval_numeric,
    kahler_potential_numeric,
    metric_inverse,
    metric_lower,
    poisson_antisym,
    vacuum,
)
from kahlerstar.scalars import RationalH

from conftest import ring_elems

h = RationalH.h()
CP1, CH1, CP2, CH2 = Space.cpn(1), Space.chn(1), Space.cpn(2), Space.chn(2)


def test_space_validation():
    with pytest.raises(ValueError):
        Space(0, 1)
    with pytest.raises(ValueError):
        Space(1, 2)
    assert Space.from_name("chn", 3) == Space(3, -1)


def test_basic_products():
    z, zb = RingElem.z(CP1, 1), RingElem.zbar(CP1, 1)
    assert RingElem.B(CP1, -1) * RingElem.B(CP1) == RingElem.const(CP1, 1)
    assert RingElem.const(CP1, 1) + z * zb == RingElem.B(CP1)
    assert RingElem.const(CH1, 1) - RingElem.z(CH1, 1) * RingElem.zbar(CH1, 1) == RingElem.B(CH1)
    assert len((RingElem.z(CP2, 1) * RingElem.zbar(CP2, 1)).terms) >= 1


def test_mixed_spaces_refused():
    with pytest.raises(MixedSpaceError):
        RingElem.z(CP1, 1) + RingElem.z(CH1, 1)


def test_vacuum_and_potential_gradients():
    assert vacuum(CP1) == RingElem.B(CP1, 0, -1)
    assert vacuum(CH1) == RingElem.B(CH1, 0, 1)
    assert dphi(CP1, 1) == RingElem.zbar(CP1, 1) * RingElem.B(CP1, -1)
    assert d_hol(1, RingElem.B(CP1, 0, -1)) == RingElem.monomial(CP1, b=(1,), p=-1, q=-1, c=-1 / h)
    assert not d_antihol(2, RingElem.z(CP2, 1))


@pytest.mark.parametrize("sp", [CP1, CH1, CP2, CH2])
def test_vacuum_annihilated_by_first_order_operator(sp):
    vac = vacuum(sp)
    for k in range(1, sp.N + 1):
        assert d_hol(k, vac).scale(h) + dphi(sp, k) * vac == RingElem.zero(sp)


def test_apply_D_bar_examples():
    z = RingElem.z(CP1, 1)
    assert apply_D_bar(1, z) == RingElem.B(CP1, 2)
    assert apply_D_bar(1, vacuum(CP1)) == RingElem.monomial(CP1, b=(1,), p=1, q=-1, c=-1 / h)


@pytest.mark.parametrize("sp", [CP1, CH1, CP2, CH2])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_iterated_D_bar_on_coordinate_closed_form(sp, m):
    # (s)^(m-1) (m-1)! B^m [sum_k delta_{i j_k} zbar^(J minus j_k) + s m z^i zbar^J]
    from itertools import product

    s = sp.s
    for i in range(1, sp.N + 1):
        for J in product(range(1, sp.N + 1), repeat=m):
            f = RingElem.z(sp, i)
            for j in reversed(J):
                f = apply_D_bar(j, f)
            zbJ = RingElem.const(sp, 1)
            for j in J:
                zbJ = zbJ * RingElem.zbar(sp, j)
            bracket = (RingElem.z(sp, i) * zbJ).scale(s * m)
            for k, jk in enumerate(J):
                if jk == i:
                    rest = RingElem.const(sp, 1)
                    for kk, j in enumerate(J):
                        if kk != k:
                            rest = rest * RingElem.zbar(sp, j)
                    bracket = bracket + rest
            expected = (bracket * RingElem.B(sp, m)).scale(s ** (m - 1) * factorial(m - 1))
            assert f == expected


def test_metric_examples():
    assert metric_lower(CP1, 1, 1) == RingElem.B(CP1, -2)
    assert metric_lower(CH2, 1, 2) == RingElem.z(CH2, 2) * RingElem.zbar(CH2, 1) * RingElem.B(CH2, -2)


@pytest.mark.parametrize("sp", [CP2, CH2])
def test_metric_inverse_contracts_to_identity(sp):
    for k in range(1, 3):
        for m in range(1, 3):
            tot = RingElem.zero(sp)
            for l in range(1, 3):
                tot = tot + metric_inverse(sp, k, l) * metric_lower(sp, l, m)
            assert tot == RingElem.const(sp, 1 if k == m else 0)


def test_poisson_examples():
    f = RingElem.z(CP2, 1) * RingElem.zbar(CP2, 2)
    assert not poisson_antisym(f, f)
    assert poisson_antisym(RingElem.zbar(CP1, 1), RingElem.z(CP1, 1)) == RingElem.B(CP1, 2)
    assert not poisson_antisym(RingElem.z(CP2, 1), RingElem.z(CP2, 2))


def test_numeric_evaluation_examples():
    assert eval_numeric(RingElem.B(CP1), [complex(0.5 ** 0.5, 0)], 0.1) == pytest.approx(1.5)
    assert kahler_potential_numeric(CP1, [0j]) == 0
    assert eval_numeric(vacuum(CP1), [1 + 0j], 0.5) == pytest.approx(0.25)
    with pytest.raises(DomainError):
        eval_numeric(RingElem.B(CH1), [1.2 + 0j], 0.1)


@given(ring_elems(), st.data())
def test_ring_axioms(f, data):
    g = data.draw(ring_elems(space=f.space))
    k = data.draw(ring_elems(space=f.space))
    assert (f * g) * k == f * (g * k)
    assert f * (g + k) == f * g + f * k
    assert f * g == g * f
    assert f - f == RingElem.zero(f.space)


@given(ring_elems(), st.data())
def test_leibniz_rule(f, data):
    g = data.draw(ring_elems(space=f.space))
    for k in range(1, f.space.N + 1):
        assert d_hol(k, f * g) == d_hol(k, f) * g + f * d_hol(k, g)
        assert d_antihol(k, f * g) == d_antihol(k, f) * g + f * d_antihol(k, g)


@given(ring_elems())
def test_closed_form_D_bar_matches_contraction(f):
    for l in range(1, f.space.N + 1):
        assert apply_D_bar(l, f) == apply_D_bar_by_contraction(l, f)
        assert apply_D(l, f) == apply_D_bar(l, f.conj()).conj()


@given(ring_elems(), st.data())
def test_poisson_antisymmetric(f, data):
    g = data.draw(ring_elems(space=f.space))
    assert poisson_antisym(f, g) == -poisson_antisym(g, f)


@given(ring_elems(max_terms=2), st.data())
def test_normal_form_respects_evaluation(f, data):
    g = data.draw(ring_elems(space=f.space, max_terms=2))
    sp = f.space
    pt = [complex(0.3, -0.2)] + [complex(-0.1, 0.25)] * (sp.N - 1)
    lhs = eval_numeric(f * g, pt, 0.1)
    rhs = eval_numeric(f, pt, 0.1) * eval_numeric(g, pt, 0.1)
    assert cmath.isclose(lhs, rhs, rel_tol=1e-10, abs_tol=1e-10)


@given(ring_elems())
def test_conjugation_is_involution(f):
    assert f.conj().conj() == f
    assert dbarphi(f.space, 1) == dphi(f.space, 1).conj()
