import pytest
from hypothesis import given

from kahlerstar.expr import ExprSyntaxError, format_ring, parse_expr, ring_to_json
from kahlerstar.ring import RingElem, Space, dphi, vacuum

from conftest import ring_elems

CP1, CP2 = Space.cpn(1), Space.cpn(2)


def test_examples():
    f = parse_expr("zb[1]*z[2] + h*B(1,0)", CP2)
    assert len(f.terms) == 2
    assert parse_expr("dPhi[1]", CP1) == dphi(CP1, 1)
    assert parse_expr("B(0,-1)", CP1) == vacuum(CP1)
    assert parse_expr("vac", CP1) == vacuum(CP1)


def test_precedence_and_powers():
    z = RingElem.z(CP1, 1)
    assert parse_expr("2*z[1]^2 - (1 + z[1])", CP1) == z * z * 2 - z - 1
    assert parse_expr("-z[1]^2", CP1) == -(z * z)


@pytest.mark.parametrize(
    "text",
    ["z[1", "z[3]", "z[1]^(1/2)", "1/z[1]", "z[1] +", "foo", "z[1]^(-1)"],
)
def test_errors(text):
    with pytest.raises((ExprSyntaxError, IndexError)):
        parse_expr(text, CP2)


def test_error_carries_position():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("z[1] + + ", CP1)
    assert "position" in str(info.value)


@given(ring_elems())
def test_round_trip(f):
    assert parse_expr(format_ring(f), f.space) == f


def test_json_is_exact_strings():
    f = parse_expr("1/3*z[1] + h*B(1,0)", CP1)
    coeffs = [t["coeff"] for t in ring_to_json(f)["terms"]]
    assert "1/3" in coeffs and "h" in coeffs
