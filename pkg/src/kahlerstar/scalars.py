"""Exact scalars: rational functions of hbar and truncated hbar-series.

Polynomials are dense tuples of ``Fraction`` coefficients, lowest degree
first.  ``RationalH`` keeps numerator and denominator coprime with a monic
denominator, so structural equality is mathematical equality.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

Rational = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated or expanded at a pole."""


# ---------------------------------------------------------------------------
# dense polynomial helpers


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else _ZERO) + (b[i] if i < len(b) else _ZERO) for i in range(n)]
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _pscale(a, c):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return (), _trim(a)
    q = [_ZERO] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lead
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] -= c * b[j]
    return _trim(q), _trim(a[:db])


def _pmonic(a):
    if not a:
        return a
    lead = a[-1]
    return tuple(c / lead for c in a)


def _monomial_degree(p):
    """k if p = c h^k, else None."""
    nz = [i for i, c in enumerate(p) if c]
    return nz[0] if len(nz) == 1 else None


def _pgcd(a, b):
    a, b = _trim(a), _trim(b)
    if not a or not b:
        return _pmonic(a or b) if (a or b) else (_ONE,)
    for x, y in ((a, b), (b, a)):
        k = _monomial_degree(x)
        if k is not None:
            v = next(i for i, c in enumerate(y) if c)
            return (_ZERO,) * min(k, v) + (_ONE,)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return _pmonic(a) if a else (_ONE,)


def _peval(a, x):
    acc = _ZERO if not isinstance(x, float) else 0.0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pcompose_neg(a):
    return tuple(c if i % 2 == 0 else -c for i, c in enumerate(a))


def _pderiv(a):
    return _trim(tuple(i * a[i] for i in range(1, len(a))))


def _as_poly(x):
    return _trim((Fraction(x),))


# ---------------------------------------------------------------------------


class RationalH:
    """Element of Q(hbar) in canonical form.

    >>> h = RationalH.h()
    >>> (h * h / (1 - h)) * (1 - h) == h * h
    True
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Sequence = (), den: Sequence = (1,), *, _canonical: bool = False):
        if _canonical:
            self.num, self.den = num, den
        else:
            n = _trim(tuple(Fraction(c) for c in num))
            d = _trim(tuple(Fraction(c) for c in den))
            if not d:
                raise ZeroDivisionError("RationalH with zero denominator")
            if not n:
                n, d = (), (_ONE,)
            else:
                g = _pgcd(n, d)
                if g != (_ONE,):
                    n, _ = _pdivmod(n, g)
                    d, _ = _pdivmod(d, g)
                lead = d[-1]
                if lead != 1:
                    n = tuple(c / lead for c in n)
                    d = tuple(c / lead for c in d)
            self.num, self.den = n, d
        self._hash = None

    # constructors -----------------------------------------------------------
    @classmethod
    def h(cls) -> "RationalH":
        return cls((0, 1), _canonical=False)

    @classmethod
    def const(cls, c: Rational) -> "RationalH":
        return cls((c,))

    @classmethod
    def coerce(cls, x) -> "RationalH":
        if isinstance(x, RationalH):
            return x
        if isinstance(x, (int, Fraction)):
            c = Fraction(x)
            return cls((c,) if c else (), (_ONE,), _canonical=True)
        raise TypeError(f"cannot coerce {type(x).__name__} to RationalH")

    # queries ----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0] if self.num else _ZERO

    def valuation(self) -> int:
        """Order of vanishing at hbar = 0 (negative for a pole)."""
        if not self.num:
            raise ValueError("valuation of zero")
        vn = next(i for i, c in enumerate(self.num) if c)
        vd = next(i for i, c in enumerate(self.den) if c)
        return vn - vd

    def __bool__(self):
        return bool(self.num)

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        try:
            o = RationalH.coerce(other)
        except TypeError:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RationalH(_padd(self.num, o.num), self.den)
        return RationalH(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalH(_pneg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        try:
            o = RationalH.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        try:
            o = RationalH.coerce(other)
        except TypeError:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RationalH()
            return RationalH(_pscale(self.num, Fraction(other)), self.den, _canonical=True)
        if not isinstance(other, RationalH):
            return NotImplemented
        if not self.num or not other.num:
            return RationalH()
        # cross-cancel before multiplying keeps degrees small
        g1 = _pgcd(self.num, other.den)
        g2 = _pgcd(other.num, self.den)
        n1, _ = _pdivmod(self.num, g1)
        d2, _ = _pdivmod(other.den, g1)
        n2, _ = _pdivmod(other.num, g2)
        d1, _ = _pdivmod(self.den, g2)
        num = _pmul(n1, n2)
        den = _pmul(d1, d2)
        lead = den[-1]
        if lead != 1:
            num = tuple(c / lead for c in num)
            den = tuple(c / lead for c in den)
        return RationalH(num, den, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalH":
        if not self.num:
            raise ZeroDivisionError("RationalH division by zero")
        return RationalH(self.den, self.num)

    def __truediv__(self, other):
        try:
            o = RationalH.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = RationalH.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = RationalH.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalH.coerce(other)
        if not isinstance(other, RationalH):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    # substitution -----------------------------------------------------------
    def substitute_neg(self) -> "RationalH":
        """Return a(-hbar)."""
        return RationalH(_pcompose_neg(self.num), _pcompose_neg(self.den))

    def derivative(self) -> "RationalH":
        return RationalH(
            _psub(_pmul(_pderiv(self.num), self.den), _pmul(self.num, _pderiv(self.den))),
            _pmul(self.den, self.den),
        )

    # printing ---------------------------------------------------------------
    def __repr__(self):
        return f"RationalH({self})"

    def __str__(self):
        num, den = _display_pair(self.num, self.den)
        n = poly_str(num, ascending=True)
        if den == (_ONE,):
            return n
        d = poly_str(den, ascending=True)
        if sum(1 for c in num if c) > 1:
            n = f"({n})"
        if sum(1 for c in den if c) > 1 or den[-1] != 1:
            d = f"({d})"
        return f"{n}/{d}"


def _display_pair(num, den):
    """Scale num/den to integer coefficients with a positive lowest denominator term."""
    from math import gcd

    if den == (_ONE,):
        return num, den
    lcm = 1
    for c in num + den:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    n = [c * lcm for c in num]
    d = [c * lcm for c in den]
    g = 0
    for c in d:
        g = gcd(g, int(c))
    low = next(c for c in d if c)
    if low < 0:
        g = -g
    return tuple(c / g for c in n), tuple(c / g for c in d)


def poly_str(p: Sequence[Fraction], var: str = "h", ascending: bool = False) -> str:
    """Human readable polynomial, parseable by the expression grammar."""
    if not p:
        return "0"
    parts = []
    order = range(len(p)) if ascending else range(len(p) - 1, -1, -1)
    for i in order:
        c = p[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = _frac_str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{_frac_str(a)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _frac_str(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def frac_str(c) -> str:
    """Exact ``p/q`` (or ``p``) string for rationals, str() otherwise."""
    if isinstance(c, (int, Fraction)):
        return _frac_str(Fraction(c))
    return str(c)


def rh_arith(a, b, op: str) -> RationalH:
    a, b = RationalH.coerce(a), RationalH.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------


class HTrunc:
    """Truncated power series c_0 + c_1 h + ... + c_K h^K (mod h^(K+1))."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence, order: int | None = None):
        cs = list(coeffs)
        if order is not None:
            cs = (cs + [0] * (order + 1))[: order + 1]
        self.coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def _check(self, other):
        if not isinstance(other, HTrunc):
            return NotImplemented
        if other.order != self.order:
            raise ValueError("truncation orders differ")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return HTrunc([a + b for a, b in zip(self.coeffs, o.coeffs)])

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return HTrunc([a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __neg__(self):
        return HTrunc([-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return HTrunc([a * other for a in self.coeffs])
        o = self._check(other)
        if o is NotImplemented:
            return o
        K = self.order
        out = []
        for n in range(K + 1):
            acc = 0
            for i in range(n + 1):
                a = self.coeffs[i]
                if a:
                    acc = acc + a * o.coeffs[n - i]
            out.append(acc)
        return HTrunc(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HTrunc):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __repr__(self):
        return f"HTrunc({[frac_str(c) for c in self.coeffs]})"


def expand_series(a, K: int) -> HTrunc:
    """Taylor coefficients of ``a`` at hbar = 0 through order K."""
    a = RationalH.coerce(a)
    if K < 0:
        raise ValueError("order must be nonnegative")
    d = a.den
    if d[0] == 0:
        v = next(i for i, c in enumerate(d) if c)
        raise PoleError(f"pole at h=0: denominator {poly_str(d)} has factor h^{v}")
    n = a.num
    d0 = d[0]
    out = []
    for k in range(K + 1):
        acc = n[k] if k < len(n) else _ZERO
        for i in range(1, min(k, len(d) - 1) + 1):
            acc -= d[i] * out[k - i]
        out.append(acc / d0)
    return HTrunc(out)


def eval_at(a, h0) -> Fraction:
    """Exact value of ``a`` at the rational point hbar = h0."""
    a = RationalH.coerce(a)
    h0 = Fraction(h0)
    den = _peval(a.den, h0)
    if den == 0:
        raise PoleError(f"pole at h={_frac_str(h0)}: denominator {poly_str(a.den)} vanishes")
    return _peval(a.num, h0) / den


def eval_float(a, h0: float) -> float:
    a = RationalH.coerce(a)
    den = _peval(tuple(float(c) for c in a.den), float(h0))
    if den == 0:
        raise PoleError(f"pole at h={h0}")
    return _peval(tuple(float(c) for c in a.num), float(h0)) / den


def squarefree_decomposition(p: Sequence[Fraction]):
    """Yun's algorithm for a monic polynomial: returns [f_1, f_2, ...] with p = prod f_i^i."""
    p = _pmonic(_trim(p))
    if len(p) <= 1:
        return []
    out = []
    a = p
    b = _pderiv(a)
    c = _pgcd(a, b)
    w, _ = _pdivmod(a, c)
    y, _ = _pdivmod(b, c)
    while True:
        z = _psub(y, _pderiv(w))
        if not z:
            out.append(w)
            break
        g = _pgcd(w, z)
        out.append(g)
        w, _ = _pdivmod(w, g)
        y, _ = _pdivmod(z, g)
        if len(w) <= 1:
            break
    # strip trailing constant factors
    while out and len(out[-1]) <= 1:
        out.pop()
    return [f if len(f) > 1 else (_ONE,) for f in out]


def pmul(a, b):
    return _pmul(a, b)


def pdivmod(a, b):
    return _pdivmod(a, b)
