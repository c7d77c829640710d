from math import factorial

import pytest
from hypothesis import given, strategies as st

from kahlerstar.combinatorics import alpha, beta, c_covariant, coeff_a, ladder_coefficient, stirling2
from kahlerstar.scalars import RationalH, expand_series

h = RationalH.h()


def _stirling_brute(n, k):
    # count set partitions of range(n) into k nonempty blocks
    def go(i, blocks):
        if i == n:
            return 1 if blocks == k else 0
        return blocks * go(i + 1, blocks) + (go(i + 1, blocks + 1) if blocks < k else 0)

    return go(0, 0)


@pytest.mark.parametrize("n,k,val", [(0, 0, 1), (3, 2, 3), (4, 2, 7)])
def test_stirling_examples(n, k, val):
    assert stirling2(n, k) == val


@given(st.integers(0, 9), st.integers(0, 9))
def test_stirling_matches_partition_count(n, k):
    assert stirling2(n, k) == _stirling_brute(n, k)


@pytest.mark.parametrize("n", range(2, 7))
def test_coefficient_column_two(n):
    assert coeff_a(n, 2) == 1


def test_coefficient_examples():
    assert coeff_a(4, 3) == 3
    assert coeff_a(5, 3) == 7


@given(st.integers(2, 20), st.integers(2, 20))
def test_table_is_shifted_stirling(n, m):
    if m <= n:
        assert coeff_a(n, m) == stirling2(n - 1, m - 1)


def test_coefficient_domain():
    with pytest.raises(ValueError):
        coeff_a(1, 1)


def test_alpha_beta_examples():
    assert alpha(1) == h
    assert alpha(2) == h ** 2 / (1 - h)
    assert alpha(4) == h ** 4 / ((1 - h) * (1 - 2 * h) * (1 - 3 * h))
    assert beta(1) == h
    assert beta(2) == h ** 2 / (1 + h)
    assert beta(3) == h ** 3 / ((1 + h) * (1 + 2 * h))


def test_covariant_coefficients():
    assert c_covariant(0, 1) == 1
    assert c_covariant(1, 1) == h
    assert c_covariant(2, -1) == h ** 2 / (2 * (1 + h))


@given(st.integers(1, 14))
def test_alpha_series_is_stirling_column(m):
    K = 16
    ser = expand_series(alpha(m), K)
    assert all(ser.coeffs[n] == stirling2(n - 1, m - 1) for n in range(m, K + 1))
    assert all(ser.coeffs[n] == 0 for n in range(m))


@given(st.integers(1, 12))
def test_beta_is_reflected_alpha(m):
    assert beta(m) == (-1) ** m * alpha(m).substitute_neg()
    assert ladder_coefficient(m, -1) == (-1) ** (m - 1) * beta(m)
    assert c_covariant(m, -1) * factorial(m) == beta(m)
