import pytest
from hypothesis import given, settings, strategies as st

from kahlerstar.ring import RingElem, Space, apply_D, apply_D_bar, dbarphi, dphi, metric_lower, poisson_antisym, vacuum
from kahlerstar.scalars import RationalH
from kahlerstar.star import (
    HSeries,
    NotInFockSpace,
    NotTerminating,
    TruncationModeError,
    c1,
    corrupted_coefficients,
    covariant_terms,
    in_ML,
    lstar_dphi,
    lstar_zbar_trunc,
    rstar_dbarphi,
    rstar_z_trunc,
    star_covariant,
    star_exact,
    star_exact_fock,
    star_series,
    star_trunc,
    star_trunc_right,
    verify_karabegov,
)

from conftest import ring_elems

h = RationalH.h()
CP1, CH1, CP2, CH2 = Space.cpn(1), Space.chn(1), Space.cpn(2), Space.chn(2)
ALL = [CP1, CH1, CP2, CH2]


@pytest.mark.parametrize("sp", ALL)
def test_canonical_commutator_first_order(sp):
    for i in range(1, sp.N + 1):
        for j in range(1, sp.N + 1):
            zj = RingElem.z(sp, j)
            lhs = lstar_dphi(i, zj) - zj * dphi(sp, i)
            assert lhs == RingElem.const(sp, h if i == j else 0)
            zbj = RingElem.zbar(sp, j)
            rhs = rstar_dbarphi(i, zbj) - dbarphi(sp, i) * zbj
            assert rhs == RingElem.const(sp, h if i == j else 0)


@pytest.mark.parametrize("sp", ALL)
def test_first_order_operators_kill_vacuum(sp):
    for i in range(1, sp.N + 1):
        assert not lstar_dphi(i, vacuum(sp))
        assert not rstar_dbarphi(i, vacuum(sp))


def test_first_order_of_zbar_series():
    z, zb = RingElem.z(CP1, 1), RingElem.zbar(CP1, 1)
    ser = lstar_zbar_trunc(1, z, 1)
    assert ser[0] == zb * z
    assert ser[1] == RingElem.B(CP1, 2)
    ch = lstar_zbar_trunc(1, RingElem.z(CH1, 1), 1)
    assert ch[1] == RingElem.B(CH1, 2)


def test_order_h_coefficient_is_inverse_metric():
    for i in (1, 2):
        for j in (1, 2):
            got = star_trunc(RingElem.zbar(CP2, i), RingElem.z(CP2, j), 1)[1]
            want = RingElem.B(CP2) * (RingElem.z(CP2, j) * RingElem.zbar(CP2, i) + (1 if i == j else 0))
            assert got == want


def test_known_second_order_value():
    ser = star_trunc(RingElem.zbar(CP1, 1), RingElem.z(CP1, 1), 2)
    assert ser[2] == RingElem.B(CP1, 3) * 2 - RingElem.B(CP1, 2) * 2


@pytest.mark.parametrize("sp", ALL)
def test_trivial_products(sp):
    K = 4
    for i in range(1, sp.N + 1):
        for j in range(1, sp.N + 1):
            for f, g in [
                (RingElem.z(sp, i), RingElem.zbar(sp, j)),
                (RingElem.zbar(sp, i), RingElem.zbar(sp, j)),
                (RingElem.z(sp, i), RingElem.z(sp, j)),
            ]:
                assert star_trunc(f, g, K) == HSeries.of(f * g, K)


def test_covariant_first_term_is_metric_contraction():
    f = RingElem.zbar(CP2, 1) * RingElem.z(CP2, 2)
    g = RingElem.z(CP2, 1) * RingElem.B(CP2, -1)
    want = RingElem.zero(CP2)
    for j in (1, 2):
        for k in (1, 2):
            want = want + metric_lower(CP2, j, k) * apply_D(j, f) * apply_D_bar(k, g)
    assert covariant_terms(f, g, 1)[1] == want


def test_truncation_mode_rejects_vacuum():
    with pytest.raises(TruncationModeError):
        star_trunc(RingElem.zbar(CP1, 1), vacuum(CP1), 2)


def test_exact_mode_preconditions():
    with pytest.raises(ValueError):
        star_exact(vacuum(CH1), vacuum(CH1), 2)
    # zbar is not annihilated by Dbar^(L+1) on the right-hand slot
    with pytest.raises(NotTerminating):
        star_exact(vacuum(CP1), RingElem.z(CP1, 1) * RingElem.B(CP1, 3), 2)
    with pytest.raises(NotInFockSpace):
        star_exact_fock(RingElem.zbar(CP1, 1), vacuum(CP1), 2)
    assert in_ML(RingElem.z(CP1, 1) * RingElem.B(CP1, -2), 2)
    assert not in_ML(RingElem.z(CP1, 1) ** 3 * RingElem.B(CP1, -2), 2)


def test_exact_vacuum_idempotent_and_matrix_unit():
    for L in (1, 2, 3):
        v = RingElem.B(CP1, -L)
        assert star_exact_fock(v, v, L) == v
        assert star_exact_fock(vacuum(CP1), vacuum(CP1), L) == v
    z, zb = RingElem.z(CP1, 1), RingElem.zbar(CP1, 1)
    got = star_exact_fock(z * RingElem.B(CP1, -2), zb * RingElem.B(CP1, -2), 2)
    assert got == z * zb * RingElem.B(CP1, -2)


def test_karabegov_examples():
    samples = [RingElem.const(CP1, 1), RingElem.z(CP1, 1), RingElem.zbar(CP1, 1), RingElem.z(CP1, 1) * RingElem.zbar(CP1, 1), RingElem.B(CP1)]
    assert verify_karabegov(CP1, 1, 5, samples).passed
    s2 = [RingElem.z(CH2, 1), RingElem.zbar(CH2, 2) * RingElem.B(CH2, -1)]
    assert verify_karabegov(CH2, 2, 4, s2).passed
    bad = verify_karabegov(CP1, 1, 5, samples, coeffs=corrupted_coefficients(2))
    assert not bad.passed and bad.witness["order"] == 2


def test_right_operator_matches():
    f = RingElem.zbar(CP2, 2) * RingElem.B(CP2, -1) + RingElem.z(CP2, 1)
    assert rstar_z_trunc(2, f, 4) == star_trunc(f, RingElem.z(CP2, 2), 4)


small = ring_elems(max_terms=2, max_deg=1, bmin=-1, bmax=1)


@settings(max_examples=15)
@given(st.sampled_from(ALL[:2]).flatmap(lambda sp: st.tuples(*(ring_elems(space=sp, max_terms=2, max_deg=1, bmin=-1, bmax=1) for _ in range(3)))))
def test_associativity_property(triple):
    f, g, k = triple
    K = 3
    F, G, H = (HSeries.of(x, K) for x in triple)
    assert star_series(star_series(F, G), H) == star_series(F, star_series(G, H))


@settings(max_examples=15)
@given(small, st.data())
def test_three_engines_agree(f, data):
    g = data.draw(ring_elems(space=f.space, max_terms=2, max_deg=1, bmin=-1, bmax=1))
    K = 3
    t = star_trunc(f, g, K)
    assert t == star_trunc_right(f, g, K)
    assert t == star_covariant(f, g, K)


@settings(max_examples=20)
@given(small, st.data())
def test_separation_of_variables(f, data):
    sp = f.space
    K = 3
    a = RingElem.z(sp, 1) * data.draw(st.integers(1, 3)) + RingElem.z(sp, sp.N) ** 2
    assert star_trunc(a, f, K) == HSeries.of(a * f, K)
    b = a.conj()
    assert star_trunc(f, b, K) == HSeries.of(f * b, K)
    one = RingElem.const(sp, 1)
    assert star_trunc(one, f, K) == HSeries.of(f, K) == star_trunc(f, one, K)


@settings(max_examples=20)
@given(small, st.data())
def test_hermiticity_and_poisson(f, data):
    g = data.draw(ring_elems(space=f.space, max_terms=2, max_deg=1, bmin=-1, bmax=1))
    K = 3
    assert star_trunc(f, g, K).conj() == star_trunc(g.conj(), f.conj(), K)
    assert star_trunc(f, g, K)[0] == f * g
    assert c1(f, g) - c1(g, f) == poisson_antisym(f, g)
