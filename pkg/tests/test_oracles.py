from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kahlerstar.oracles import (
    HypParams,
    XSeries,
    bordemann_F,
    bordemann_hyp_target,
    bordemann_product,
    closed_form_product,
    cp1_single_form,
    default_points,
    hyp_expand,
    numeric_residual,
    partial_sum_residuals,
    vacuum_geometric_closure,
)
from kahlerstar.ring import DomainError, RingElem, Space
from kahlerstar.star import star_trunc

CP1, CH1, CP2, CH2 = Space.cpn(1), Space.chn(1), Space.cpn(2), Space.chn(2)
F = Fraction


def xs(*rows):
    return XSeries([tuple(F(c) for c in r) for r in rows])


def test_hyp_examples():
    assert hyp_expand(HypParams(1, 1, 1, -1, -1), 2) == xs((1,), (0, 1), (0, 1, 2))
    # Gauss terms: x h/(1+h) + 2 x^2 h^2/((1+h)(1+2h)) + ..., so the h^2 part is -x + 2x^2,
    # which is also the h -> -h, x -> -x image of the line above
    assert hyp_expand(HypParams(1, 1, 1, 1, 1), 2) == xs((1,), (0, 1), (0, -1, 2))
    assert str(HypParams(1, 1, 1, -1, -1)) == "2F1(1, 1; 1 - 1/h; -x)"


def test_hyp_params_validation():
    with pytest.raises(ValueError):
        HypParams(1, 1, 1, 0)
    with pytest.raises(ValueError):
        HypParams(1, 1, 1, 1, 2)


@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 3), st.sampled_from([1, -1, 2]), st.sampled_from([1, -1]))
def test_hyp_leading_term_and_reflection(a, b, c0, c1, sign):
    p = HypParams(a, b, c0, c1, sign)
    ser = hyp_expand(p, 4)
    assert ser.coeffs[0] == (F(1),)
    q = HypParams(a, b, c0, -c1, -sign)
    assert ser.substitute(-1, -1) == hyp_expand(q, 4)


def test_bordemann_examples():
    assert bordemann_F(1, 3).coeffs[0] == (F(1),)
    for kind in (1, 2):
        assert bordemann_F(kind, 6) == bordemann_hyp_target(kind, 6)


@pytest.mark.parametrize("sp", [CP2, CH2])
def test_closed_form_matches_engine(sp):
    for i in (1, 2):
        for j in (1, 2):
            assert star_trunc(RingElem.zbar(sp, i), RingElem.z(sp, j), 5) == closed_form_product(sp, i, j, 5)


def test_bordemann_product_and_single_form():
    assert bordemann_product(1, 2, 5) == closed_form_product(CP2, 1, 2, 5)
    assert cp1_single_form(6) == star_trunc(RingElem.zbar(CP1, 1), RingElem.z(CP1, 1), 6)


@pytest.mark.parametrize("sp", [CP1, CH1, CP2, CH2])
@pytest.mark.parametrize("mirror", [False, True])
def test_geometric_closure(sp, mirror):
    assert vacuum_geometric_closure(sp, 1, 8, mirror).passed


def test_numeric_examples():
    pts = default_points(CP1)
    half = [p for p in pts if sum(F(x) ** 2 + F(y) ** 2 for x, y in p) == F(1, 2)]
    assert numeric_residual("zb-vac", CP1, points=half).passed
    ch = [p for p in default_points(CH1) if sum(F(x) ** 2 + F(y) ** 2 for x, y in p) == F(2, 5)]
    assert numeric_residual("zb-vac", CH1, points=ch).passed
    bad = numeric_residual("zb-vac", CP1, points=half, drop=[2])
    assert not bad.passed and float(bad.witness["max_residual"]) > 1e-4


def test_points_have_requested_radii():
    for sp in (CP1, CP2):
        radii = sorted(sum(F(x) ** 2 + F(y) ** 2 for x, y in p) for p in default_points(sp))
        assert radii == [0, F(1, 10), F(1, 4), F(2, 5), F(1, 2)]


def test_residual_history_decreases():
    hist = partial_sum_residuals("vac-z", CP1, default_points(CP1)[1:], 0.05, 30)
    for row in hist:
        assert all(b <= a * (1 + 1e-9) for a, b in zip(row, row[1:]))


def test_bad_inputs():
    with pytest.raises(ValueError):
        partial_sum_residuals("nope", CP1, default_points(CP1), 0.05, 3)
    with pytest.raises(DomainError):
        partial_sum_residuals("zb-vac", CP1, default_points(CP1), 0, 3)


@settings(max_examples=20)
@given(st.integers(0, 3), st.integers(0, 3))
def test_xseries_substitution_is_involution(a, b):
    s = xs((a, b), (b,), (1, a, b))
    assert s.substitute(-1, -1).substitute(-1, -1) == s
