"""Exact numbers of the form r * sqrt(rho).

``rho`` is kept in a canonical squarefree shape so that two radicals with
the same square class compare and add structurally: a squarefree integer
times a squarefree polynomial in h whose lowest coefficient is 1.  Sums of different square
classes are refused rather than approximated.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .scalars import RationalH, _pmul, squarefree_decomposition


class RadicalClashError(ValueError):
    """Attempt to add radicals whose radicands differ."""


def _squarefree_int(n: int):
    """n = outside^2 * inside with inside squarefree (sign kept inside).

    Trial division only runs to n^(1/3): what is left afterwards has at most
    two prime factors, so it is 1, p, p*q or p^2, and only p^2 is a square.
    """
    sign = -1 if n < 0 else 1
    n = abs(n)
    outside, inside = 1, 1
    d = 2
    while d * d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            outside *= d
        if n % d == 0:
            n //= d
            inside *= d
        d += 1
    r = isqrt(n)
    if r > 1 and r * r == n:
        outside *= r
    else:
        inside *= n
    return outside, sign * inside


def _low_monic(p):
    v = next(i for i, c in enumerate(p) if c)
    return tuple(c / p[v] for c in p), p[v]


def _split_square(value: RationalH):
    """value = outside^2 * radicand with radicand canonical; returns (outside, radicand).

    Branch: the square root is the one that is positive for small h > 0, so
    every polynomial factor is scaled to have lowest coefficient 1 and the
    rational content carries the sign.
    """
    if value.is_zero():
        return RationalH.coerce(0), RationalH.coerce(1)
    den, dc = _low_monic(value.den)
    num = tuple(c / dc for c in value.num)
    # sqrt(P/Q) = sqrt(P*Q)/Q with Q(0+) > 0
    pq, content = _low_monic(_pmul(num, den))
    u, v = content.numerator, content.denominator
    o_int, in_int = _squarefree_int(u * v)
    radicand_poly = (Fraction(1),)
    out_poly = (Fraction(1),)
    for i, f in enumerate(squarefree_decomposition(pq), start=1):
        f, _ = _low_monic(f)
        for _ in range(i // 2):
            out_poly = _pmul(out_poly, f)
        if i % 2:
            radicand_poly = _pmul(radicand_poly, f)
    outside = RationalH.coerce(Fraction(o_int, v)) * RationalH(out_poly) / RationalH(den)
    radicand = RationalH(tuple(c * in_int for c in radicand_poly))
    return outside, radicand


class Radical:
    """r * sqrt(rho); construct with ``Radical.sqrt`` or ``Radical.rational``."""

    __slots__ = ("r", "rho")

    def __init__(self, r, rho, *, _canonical: bool = False):
        r = RationalH.coerce(r)
        rho = RationalH.coerce(rho)
        if not _canonical:
            o, rho = _split_square(rho)
            r = r * o
        if r.is_zero():
            rho = RationalH.coerce(1)
        self.r, self.rho = r, rho

    @classmethod
    def sqrt(cls, value, sign: int = 1) -> "Radical":
        return cls(sign, value)

    @classmethod
    def rational(cls, c) -> "Radical":
        return cls(c, 1, _canonical=True)

    @classmethod
    def zero(cls) -> "Radical":
        return cls.rational(0)

    def is_zero(self) -> bool:
        return self.r.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def squared(self) -> RationalH:
        return self.r * self.r * self.rho

    def __mul__(self, other):
        if not isinstance(other, Radical):
            try:
                other = Radical.rational(other)
            except TypeError:
                return NotImplemented
        return Radical(self.r * other.r, self.rho * other.rho)

    __rmul__ = __mul__

    def __neg__(self):
        return Radical(-self.r, self.rho, _canonical=True)

    def __add__(self, other):
        if not isinstance(other, Radical):
            other = Radical.rational(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.rho != other.rho:
            raise RadicalClashError(f"cannot add sqrt({self.rho}) and sqrt({other.rho}) terms exactly")
        return Radical(self.r + other.r, self.rho, _canonical=True)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, Radical):
            try:
                other = Radical.rational(other)
            except TypeError:
                return NotImplemented
        return self.r == other.r and self.rho == other.rho

    def __hash__(self):
        return hash((self.r, self.rho))

    def at(self, h0) -> "Radical":
        """Specialize h = h0 (exact), re-canonicalizing the radicand."""
        from .scalars import eval_at

        return Radical(eval_at(self.r, h0), eval_at(self.rho, h0))

    def to_float(self, h0: float = 0.0) -> float:
        from .scalars import eval_float

        return eval_float(self.r, h0) * eval_float(self.rho, h0) ** 0.5

    def __repr__(self):
        return f"Radical({self})"

    def __str__(self):
        if self.rho == 1:
            return _paren(self.r)
        return f"{_paren(self.r)}*sqrt({self.rho})" if self.r != 1 else f"sqrt({self.rho})"

    def to_json(self) -> dict:
        return {"r": str(self.r), "rho": str(self.rho)}


def _paren(x: RationalH) -> str:
    s = str(x)
    return s if x.is_constant() else f"({s})"


__all__ = ["Radical", "RadicalClashError"]
