"""Stirling numbers and the hbar-coefficient ladder of the operator series."""
from __future__ import annotations

import threading
from functools import lru_cache
from fractions import Fraction
from math import factorial

from .scalars import RationalH

DEFAULT_TABLE_CAP = 64


def stirling2(n: int, k: int) -> int:
    """Second-kind Stirling number S(n, k); 0 outside the triangle."""
    if n < 0 or k < 0 or k > n:
        return 1 if (n == 0 and k == 0) else 0
    row = [1]  # S(0, .)
    for i in range(1, n + 1):
        new = [0] * (min(i, k) + 1)
        for j in range(1, len(new)):
            left = row[j] if j < len(row) else 0
            new[j] = j * left + row[j - 1]
        row = new
    return row[k] if k < len(row) else 0


class CoeffTable:
    """Memoized a(n, m) from a(n, 2) = 1 and a(n, m) = a(n-1, m-1) + (m-1) a(n-1, m)."""

    def __init__(self, cap: int = DEFAULT_TABLE_CAP):
        self.cap = cap
        self._rows: dict[int, tuple[int, ...]] = {}
        self._lock = threading.Lock()

    def _row(self, n: int) -> tuple[int, ...]:
        row = self._rows.get(n)
        if row is not None:
            return row
        with self._lock:
            if n in self._rows:
                return self._rows[n]
            start = max(self._rows, default=1)
            for k in range(start + 1, n + 1):
                # row[m] holds a(k, m); indices 0 and 1 unused
                prev = self._rows.get(k - 1, (0, 0))
                row = [0] * (k + 1)
                row[2] = 1
                for m in range(3, k + 1):
                    left = prev[m - 1] if m - 1 < len(prev) else 0
                    right = prev[m] if m < len(prev) else 0
                    row[m] = left + (m - 1) * right
                self._rows[k] = tuple(row)
            return self._rows[n]

    def __call__(self, n: int, m: int) -> int:
        if not (2 <= m <= n):
            raise ValueError(f"a(n, m) needs 2 <= m <= n, got n={n}, m={m}")
        if n > self.cap:
            raise ValueError(f"n={n} exceeds table cap {self.cap}")
        return self._row(n)[m]


_TABLE = CoeffTable()


def coeff_a(n: int, m: int) -> int:
    return _TABLE(n, m)


@lru_cache(maxsize=None)
def alpha(m: int) -> RationalH:
    """h^m / prod_{n=1}^{m-1} (1 - n h); alpha(1) = h, alpha(0) = 1 by convention."""
    if m < 0:
        raise ValueError("alpha needs m >= 0")
    den = (Fraction(1),)
    for n in range(1, m):
        den = _mul_linear(den, -n)
    # h^m and prod(1 - n h) are coprime; only the monic scaling remains
    lead = den[-1]
    num = (Fraction(0),) * m + (1 / lead,)
    return RationalH(num, tuple(c / lead for c in den), _canonical=True)


@lru_cache(maxsize=None)
def beta(m: int) -> RationalH:
    """(-1)^m alpha_m(-h)."""
    a = alpha(m).substitute_neg()
    return a if m % 2 == 0 else -a


def _mul_linear(p, c):
    # p(h) * (1 + c h)
    out = list(p) + [Fraction(0)]
    for i in range(len(p) - 1, -1, -1):
        out[i + 1] += c * p[i]
    return tuple(out)


@lru_cache(maxsize=None)
def ladder_coefficient(m: int, space_sign: int) -> RationalH:
    """Coefficient of the m-th term in the z-bar / z operator series.

    alpha_m for CP^N, (-1)^(m-1) beta_m for CH^N.
    """
    if space_sign > 0:
        return alpha(m)
    b = beta(m)
    return b if m % 2 == 1 else -b


@lru_cache(maxsize=None)
def c_covariant(n: int, space) -> RationalH:
    """alpha_n / n! (CP^N) or beta_n / n! (CH^N)."""
    sign = space if isinstance(space, int) else space.s
    base = alpha(n) if sign > 0 else beta(n)
    return base * Fraction(1, factorial(n))
