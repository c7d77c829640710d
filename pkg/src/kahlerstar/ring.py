"""The function ring on CP^N / CH^N and its first-order operators.

Elements are finite sums  c * z^a zbar^b B^(p + q/h)  with  B = 1 + s|z|^2.
Since  z^1 zbar^1 = s(B - 1) - sum_{k>=2} z^k zbar^k,  every element has a
unique normal form in which no monomial contains both z^1 and zbar^1.  That
normal form is what ``RingElem`` stores; equality is therefore structural
and powers of B cancel automatically (``B^-1 * (1 + s|z|^2) == 1``).

Indices in the public API are 1-based, as in the formulas they implement.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Tuple

from .scalars import RationalH, eval_float

Key = Tuple[Tuple[int, ...], Tuple[int, ...], int, int]


@dataclass(frozen=True)
class Space:
    """CP^N (s = +1) or CH^N (s = -1) in one inhomogeneous chart."""

    N: int
    s: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("complex dimension must be >= 1")
        if self.s not in (1, -1):
            raise ValueError("sign must be +1 (CP^N) or -1 (CH^N)")

    @classmethod
    def cpn(cls, N: int) -> "Space":
        return cls(N, 1)

    @classmethod
    def chn(cls, N: int) -> "Space":
        return cls(N, -1)

    @classmethod
    def from_name(cls, name: str, N: int) -> "Space":
        name = name.lower()
        if name in ("cpn", "cp"):
            return cls.cpn(N)
        if name in ("chn", "ch"):
            return cls.chn(N)
        raise ValueError(f"unknown space {name!r} (expected cpn or chn)")

    @property
    def name(self) -> str:
        return "cpn" if self.s > 0 else "chn"

    def check_index(self, k: int) -> None:
        if not (1 <= k <= self.N):
            raise IndexError(f"index {k} out of range 1..{self.N}")

    def __str__(self):
        return f"{'CP' if self.s > 0 else 'CH'}^{self.N}"


class MixedSpaceError(ValueError):
    pass


@lru_cache(maxsize=None)
def _pair_reduction(N: int, s: int, t: int):
    """(z1 zbar1)^t as {(B-exponent, (d_2..d_N)): coeff}, d_k the power of z_k zbar_k."""
    base = {(1, (0,) * (N - 1)): Fraction(s), (0, (0,) * (N - 1)): Fraction(-s)}
    for k in range(N - 1):
        d = [0] * (N - 1)
        d[k] = 1
        base[(0, tuple(d))] = Fraction(-1)
    out = {(0, (0,) * (N - 1)): Fraction(1)}
    for _ in range(t):
        nxt: dict = {}
        for (e1, d1), c1 in out.items():
            for (e2, d2), c2 in base.items():
                key = (e1 + e2, tuple(a + b for a, b in zip(d1, d2)))
                nxt[key] = nxt.get(key, 0) + c1 * c2
        out = {k: v for k, v in nxt.items() if v}
    return tuple(out.items())


@lru_cache(maxsize=None)
def _b_power_plain(N: int, s: int, p: int):
    """(1 + s sum z_k zbar_k)^p as {(d_1..d_N): coeff} for p >= 0."""
    out = {(0,) * N: Fraction(1)}
    for _ in range(p):
        nxt: dict = {}
        for d, c in out.items():
            nxt[d] = nxt.get(d, 0) + c
            for k in range(N):
                dd = list(d)
                dd[k] += 1
                dd = tuple(dd)
                nxt[dd] = nxt.get(dd, 0) + s * c
        out = nxt
    return tuple(out.items())


def exponent_coeff(p: int, q: int):
    """The scalar p + q/h as a coefficient."""
    if q == 0:
        return Fraction(p)
    return RationalH((q, p), (0, 1))


def _accumulate(space: Space, terms: dict, a, b, p: int, q: int, c) -> None:
    if a[0] and b[0]:
        t = min(a[0], b[0])
        N = space.N
        for (eB, d), cc in _pair_reduction(N, space.s, t):
            aa = (a[0] - t,) + tuple(a[k] + d[k - 1] for k in range(1, N))
            bb = (b[0] - t,) + tuple(b[k] + d[k - 1] for k in range(1, N))
            key = (aa, bb, p + eB, q)
            terms[key] = terms.get(key, 0) + c * cc
    else:
        key = (a, b, p, q)
        terms[key] = terms.get(key, 0) + c


def _is_zero(c) -> bool:
    return c == 0


class RingElem:
    """Immutable element of the ring, in normal form."""

    __slots__ = ("space", "terms")

    def __init__(self, space: Space, terms: Dict[Key, object] | None = None, *, _normal: bool = False):
        self.space = space
        if terms is None:
            self.terms = {}
        elif _normal:
            self.terms = {k: v for k, v in terms.items() if not _is_zero(v)}
        else:
            acc: dict = {}
            for (a, b, p, q), c in terms.items():
                if len(a) != space.N or len(b) != space.N:
                    raise ValueError("multidegree length does not match N")
                _accumulate(space, acc, tuple(a), tuple(b), p, q, c)
            self.terms = {k: v for k, v in acc.items() if not _is_zero(v)}

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, space: Space) -> "RingElem":
        return cls(space, {}, _normal=True)

    @classmethod
    def const(cls, space: Space, c=1) -> "RingElem":
        zero = (0,) * space.N
        return cls(space, {(zero, zero, 0, 0): c}, _normal=True)

    @classmethod
    def monomial(cls, space: Space, a=None, b=None, p: int = 0, q: int = 0, c=1) -> "RingElem":
        zero = (0,) * space.N
        a = tuple(a) if a is not None else zero
        b = tuple(b) if b is not None else zero
        return cls(space, {(a, b, p, q): c})

    @classmethod
    def z(cls, space: Space, k: int) -> "RingElem":
        space.check_index(k)
        return cls.monomial(space, a=_unit(space.N, k))

    @classmethod
    def zbar(cls, space: Space, k: int) -> "RingElem":
        space.check_index(k)
        return cls.monomial(space, b=_unit(space.N, k))

    @classmethod
    def B(cls, space: Space, p: int = 1, q: int = 0) -> "RingElem":
        return cls.monomial(space, p=p, q=q)

    @classmethod
    def abs2(cls, space: Space) -> "RingElem":
        """|z|^2 = s(B - 1)."""
        return (cls.B(space) - cls.const(space)) * space.s

    # queries ----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def q_values(self) -> set:
        return {k[3] for k in self.terms}

    def is_q_free(self) -> bool:
        return all(k[3] == 0 for k in self.terms)

    def coefficients(self) -> Iterable:
        return self.terms.values()

    def is_scalar(self) -> bool:
        zero = (0,) * self.space.N
        return all(k == (zero, zero, 0, 0) for k in self.terms)

    def scalar_value(self):
        if not self.is_scalar():
            raise ValueError("not a scalar")
        zero = (0,) * self.space.N
        return self.terms.get((zero, zero, 0, 0), Fraction(0))

    def is_holomorphic(self) -> bool:
        return self._depends_only_on(lambda a, b, p: not any(b) and p == 0)

    def is_antiholomorphic(self) -> bool:
        return self._depends_only_on(lambda a, b, p: not any(a) and p == 0)

    def _depends_only_on(self, pred) -> bool:
        return all(pred(a, b, p) and q == 0 for (a, b, p, q) in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _term_sort_key(kv[0]))

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "RingElem") -> None:
        if other.space != self.space:
            raise MixedSpaceError(f"cannot combine elements of {self.space} and {other.space}")

    def __add__(self, other):
        if not isinstance(other, RingElem):
            if isinstance(other, (int, Fraction, RationalH)):
                other = RingElem.const(self.space, other)
            else:
                return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return RingElem(self.space, out, _normal=True)

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.space, {k: -c for k, c in self.terms.items()}, _normal=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, RationalH)):
            other = RingElem.const(self.space, other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "RingElem":
        if _is_zero(c):
            return RingElem.zero(self.space)
        return RingElem(self.space, {k: v * c for k, v in self.terms.items()}, _normal=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RationalH)):
            return self.scale(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        self._check(other)
        out: dict = {}
        sp = self.space
        for (a1, b1, p1, q1), c1 in self.terms.items():
            for (a2, b2, p2, q2), c2 in other.terms.items():
                a = tuple(x + y for x, y in zip(a1, a2))
                b = tuple(x + y for x, y in zip(b1, b2))
                _accumulate(sp, out, a, b, p1 + p2, q1 + q2, c1 * c2)
        return RingElem(sp, out, _normal=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RationalH)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self.terms) == 1:
                ((a, b, p, q), c), = self.terms.items()
                if not any(a) and not any(b):
                    m = -k
                    inv = c.inverse() if isinstance(c, RationalH) else 1 / Fraction(c)
                    return RingElem(self.space, {(a, b, -p * m, -q * m): inv ** m}, _normal=True)
            raise ValueError("negative powers are only defined for scalar multiples of B powers")
        out = RingElem.const(self.space)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RationalH)):
            other = RingElem.const(self.space, other)
        if not isinstance(other, RingElem):
            return NotImplemented
        if other.space != self.space:
            return False
        return self.terms == other.terms

    __hash__ = None  # mutable-looking dict payload; compare with ==

    def map_coefficients(self, fn) -> "RingElem":
        return RingElem(self.space, {k: fn(c) for k, c in self.terms.items()}, _normal=True)

    def conj(self) -> "RingElem":
        """Complex conjugate (coefficients are real in h)."""
        return RingElem(self.space, {(b, a, p, q): c for (a, b, p, q), c in self.terms.items()}, _normal=True)

    def specialize(self, L: int) -> "RingElem":
        """Fix h = 1/L: B^(p + q/h) becomes B^(p + qL), coefficients are evaluated."""
        from .scalars import eval_at

        h0 = Fraction(1, L)
        out: dict = {}
        for (a, b, p, q), c in self.terms.items():
            val = eval_at(c, h0) if isinstance(c, RationalH) else Fraction(c)
            key = (a, b, p + q * L, 0)
            out[key] = out.get(key, 0) + val
        return RingElem(self.space, {k: v for k, v in out.items() if v}, _normal=True)

    def to_plain(self) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], object]:
        """Expand into an ordinary polynomial in z, zbar.

        Raises ValueError when a negative (or non-integer) power of B remains.
        """
        N, s = self.space.N, self.space.s
        out: dict = {}
        for (a, b, p, q), c in self.terms.items():
            if q != 0 or p < 0:
                raise ValueError("element is not a polynomial in z, zbar")
            for d, cc in _b_power_plain(N, s, p):
                aa = tuple(x + y for x, y in zip(a, d))
                bb = tuple(x + y for x, y in zip(b, d))
                out[(aa, bb)] = out.get((aa, bb), 0) + c * cc
        return {k: v for k, v in out.items() if not _is_zero(v)}

    @classmethod
    def from_plain(cls, space: Space, poly: dict, p: int = 0, q: int = 0) -> "RingElem":
        return cls(space, {(a, b, p, q): c for (a, b), c in poly.items()})

    def __repr__(self):
        from .expr import format_ring

        return f"RingElem<{self.space}>({format_ring(self)})"

    def __str__(self):
        from .expr import format_ring

        return format_ring(self)


def _unit(N: int, k: int) -> Tuple[int, ...]:
    return tuple(1 if i == k - 1 else 0 for i in range(N))


def _term_sort_key(key: Key):
    a, b, p, q = key
    return (q, p, sum(a) + sum(b), a, b)


# ---------------------------------------------------------------------------
# constructors named after the geometry


def vacuum(space: Space) -> RingElem:
    """e^(-Phi/h) = B^(-s/h)."""
    return RingElem.B(space, 0, -space.s)


def dphi(space: Space, k: int) -> RingElem:
    """d_k Phi = zbar^k / B (same formula on both spaces)."""
    return RingElem.zbar(space, k) * RingElem.B(space, -1)


def dbarphi(space: Space, k: int) -> RingElem:
    """d_kbar Phi = z^k / B."""
    return RingElem.z(space, k) * RingElem.B(space, -1)


def metric_lower(space: Space, j: int, k: int) -> RingElem:
    """g_{j kbar} = (B delta_jk - s z^k zbar^j) / B^2."""
    space.check_index(j)
    space.check_index(k)
    B = RingElem.B(space)
    val = RingElem.z(space, k) * RingElem.zbar(space, j) * (-space.s)
    if j == k:
        val = val + B
    return val * RingElem.B(space, -2)


def metric_inverse(space: Space, i: int, j: int) -> RingElem:
    """g^{ibar j} = B (delta_ij + s z^j zbar^i)."""
    space.check_index(i)
    space.check_index(j)
    val = RingElem.z(space, j) * RingElem.zbar(space, i) * space.s
    if i == j:
        val = val + 1
    return val * RingElem.B(space)


def ring_arith(f: RingElem, g: RingElem, op: str) -> RingElem:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# differential operators


def d_hol(k: int, f: RingElem) -> RingElem:
    sp = f.space
    sp.check_index(k)
    i = k - 1
    out: dict = {}
    for (a, b, p, q), c in f.terms.items():
        if a[i]:
            aa = a[:i] + (a[i] - 1,) + a[i + 1:]
            _accumulate(sp, out, aa, b, p, q, c * a[i])
        if p or q:
            bb = b[:i] + (b[i] + 1,) + b[i + 1:]
            _accumulate(sp, out, a, bb, p - 1, q, c * exponent_coeff(p, q) * sp.s)
    return RingElem(sp, out, _normal=True)


def d_antihol(k: int, f: RingElem) -> RingElem:
    return d_hol(k, f.conj()).conj()


def apply_D_bar(l: int, f: RingElem) -> RingElem:
    """D^lbar f = g^{lbar k} d_k f.

    On a monomial this is  B^(e+1) [a_l z^(a-e_l) zbar^b + s(|a| + e) zbar^l z^a zbar^b]
    (contract the inverse metric with the gradient and use |z|^2 = s(B - 1)).
    """
    sp = f.space
    sp.check_index(l)
    i = l - 1
    s = sp.s
    out: dict = {}
    for (a, b, p, q), c in f.terms.items():
        if a[i]:
            aa = a[:i] + (a[i] - 1,) + a[i + 1:]
            _accumulate(sp, out, aa, b, p + 1, q, c * a[i])
        w = sum(a) + p
        if q:
            coef = RationalH((q, w), (0, 1))
        else:
            coef = w
        if not _is_zero(coef):
            bb = b[:i] + (b[i] + 1,) + b[i + 1:]
            _accumulate(sp, out, a, bb, p + 1, q, c * coef * s)
    return RingElem(sp, out, _normal=True)


def apply_D(l: int, f: RingElem) -> RingElem:
    """D^l f = g^{l jbar} d_jbar f, the conjugate of ``apply_D_bar``."""
    return apply_D_bar(l, f.conj()).conj()


def apply_D_bar_by_contraction(l: int, f: RingElem) -> RingElem:
    """Same operator as ``apply_D_bar`` computed literally; used as an oracle."""
    sp = f.space
    out = RingElem.zero(sp)
    for k in range(1, sp.N + 1):
        out = out + metric_inverse(sp, l, k) * d_hol(k, f)
    return out


def poisson_antisym(f: RingElem, g: RingElem) -> RingElem:
    """g^{lbar k} (d_lbar f d_k g - d_lbar g d_k f)."""
    sp = f.space
    f._check(g)
    out = RingElem.zero(sp)
    for l in range(1, sp.N + 1):
        fl, gl = d_antihol(l, f), d_antihol(l, g)
        if not fl and not gl:
            continue
        for k in range(1, sp.N + 1):
            term = fl * d_hol(k, g) - gl * d_hol(k, f)
            if term:
                out = out + metric_inverse(sp, l, k) * term
    return out


# ---------------------------------------------------------------------------
# numerics


class DomainError(ValueError):
    pass


def eval_numeric(f: RingElem, z, h0: float) -> complex:
    """Evaluate f at the point z (sequence of complex) with h = h0 > 0."""
    sp = f.space
    z = [complex(v) for v in z]
    if len(z) != sp.N:
        raise ValueError(f"point has {len(z)} coordinates, space has N={sp.N}")
    if h0 <= 0:
        raise DomainError("h0 must be positive")
    r2 = sum(abs(v) ** 2 for v in z)
    if sp.s < 0 and r2 >= 1:
        raise DomainError("CH^N points must satisfy |z| < 1")
    Bv = 1 + sp.s * r2
    if Bv <= 0:
        raise DomainError("B must be positive")
    zb = [v.conjugate() for v in z]
    total = 0j
    for (a, b, p, q), c in f.terms.items():
        cv = eval_float(c, h0) if isinstance(c, RationalH) else float(c)
        mono = 1 + 0j
        for k in range(sp.N):
            if a[k]:
                mono *= z[k] ** a[k]
            if b[k]:
                mono *= zb[k] ** b[k]
        total += cv * mono * Bv ** (p + q / h0)
    return total


def kahler_potential_numeric(space: Space, z) -> float:
    """Phi = s ln(1 + s|z|^2); not itself a ring element."""
    r2 = sum(abs(complex(v)) ** 2 for v in z)
    Bv = 1 + space.s * r2
    if Bv <= 0:
        raise DomainError("B must be positive")
    return space.s * math.log(Bv)


def multisets(N: int, size: int):
    """Sorted index tuples (1-based) of the given size, lexicographic."""
    from itertools import combinations_with_replacement

    return list(combinations_with_replacement(range(1, N + 1), size))


def multiplicity_vector(N: int, idx: Iterable[int]) -> Tuple[int, ...]:
    v = [0] * N
    for i in idx:
        v[i - 1] += 1
    return tuple(v)


def multinomial(counts: Iterable[int]) -> int:
    counts = list(counts)
    out = math.factorial(sum(counts))
    for c in counts:
        out //= math.factorial(c)
    return out


__all__ = [
    "Space",
    "RingElem",
    "MixedSpaceError",
    "DomainError",
    "vacuum",
    "dphi",
    "dbarphi",
    "metric_lower",
    "metric_inverse",
    "ring_arith",
    "d_hol",
    "d_antihol",
    "apply_D_bar",
    "apply_D",
    "apply_D_bar_by_contraction",
    "poisson_antisym",
    "eval_numeric",
    "kahler_potential_numeric",
    "exponent_coeff",
    "multisets",
    "multiplicity_vector",
    "multinomial",
]
