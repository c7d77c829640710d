"""Independent recomputations used to cross-check the star engine.

* Gauss hypergeometric series whose third parameter is c0 + c1/h, expanded
  in h term by term (each Gauss term k is O(h^k), so K+1 terms suffice);
* the triple-sum series F1, F2 of the homogeneous-coordinate product;
* the closed forms of  zbar^i * z^j  assembled from those series;
* residual checks for the vacuum identities, which are infinite operator
  sums: exactly, by recognizing the geometric series, and numerically, by
  partial sums with exact per-term coefficients.

Series in x = |z|^2 are ``XSeries``: a list (index = power of h) of dense
polynomials in x with ``Fraction`` coefficients.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import factorial
from typing import List, Optional, Sequence, Tuple

from .combinatorics import ladder_coefficient
from .report import FAIL, PASS, Report
from .ring import DomainError, RingElem, Space, vacuum
from .scalars import RationalH, _padd, _pmul, _pscale, _trim, eval_at, expand_series, frac_str, poly_str
from .star import HSeries, _zbar_series_terms

Poly = Tuple[Fraction, ...]


class XSeries:
    """sum_n h^n P_n(x) mod h^(K+1)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Poly]):
        self.coeffs = [_trim(tuple(Fraction(c) for c in p)) for p in coeffs]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, K: int) -> "XSeries":
        return cls([()] * (K + 1))

    def __add__(self, other: "XSeries") -> "XSeries":
        K = min(self.order, other.order)
        return XSeries([_padd(self.coeffs[n], other.coeffs[n]) for n in range(K + 1)])

    def __sub__(self, other: "XSeries") -> "XSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "XSeries":
        return XSeries([_pscale(p, Fraction(c)) for p in self.coeffs])

    def times_poly(self, q: Poly) -> "XSeries":
        return XSeries([_pmul(p, q) for p in self.coeffs])

    def times_h_series(self, t) -> "XSeries":
        """Multiply by a scalar h-series (``HTrunc``)."""
        K = self.order
        out = [()] * (K + 1)
        for i, p in enumerate(self.coeffs):
            for j in range(K + 1 - i):
                c = t.coeffs[j] if j < len(t.coeffs) else 0
                if c and p:
                    out[i + j] = _padd(out[i + j], _pscale(p, c))
        return XSeries(out)

    def shift(self, n: int = 1) -> "XSeries":
        K = self.order
        return XSeries(([()] * n + self.coeffs)[: K + 1])

    def substitute(self, h_sign: int = 1, x_sign: int = 1) -> "XSeries":
        """h -> h_sign h, x -> x_sign x."""
        out = []
        for n, p in enumerate(self.coeffs):
            hs = h_sign ** n
            out.append(tuple(c * hs * (x_sign ** i) for i, c in enumerate(p)))
        return XSeries(out)

    def __eq__(self, other):
        if not isinstance(other, XSeries):
            return NotImplemented
        K = min(self.order, other.order)
        return all(self.coeffs[n] == other.coeffs[n] for n in range(K + 1))

    __hash__ = None

    def __repr__(self):
        return f"XSeries({self})"

    def __str__(self):
        parts = []
        for n, p in enumerate(self.coeffs):
            if not p:
                continue
            body = poly_str(p, "x", ascending=True)
            if n == 0:
                parts.append(body)
            else:
                hn = "h" if n == 1 else f"h^{n}"
                parts.append(f"({body})*{hn}" if len([c for c in p if c]) > 1 else f"{body}*{hn}")
        return " + ".join(parts) if parts else "0"

    def to_ring(self, space: Space) -> HSeries:
        """Substitute x = |z|^2 to get ring-valued coefficients."""
        x = RingElem.abs2(space)
        out = []
        for p in self.coeffs:
            acc = RingElem.zero(space)
            xp = RingElem.const(space)
            for c in p:
                if c:
                    acc = acc + xp.scale(c)
                xp = xp * x
            out.append(acc)
        return HSeries(space, out)


# ---------------------------------------------------------------------------
# hypergeometric


@dataclass(frozen=True)
class HypParams:
    """2F1(a, b; c0 + c1/h; sign*x)."""

    a: int
    b: int
    c0: int
    c1: int
    sign: int = 1

    def __post_init__(self):
        if self.c1 == 0:
            raise ValueError("c1 must be nonzero so that the k-th Gauss term is O(h^k)")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def __str__(self):
        third = f"{self.c0} {'+' if self.c1 > 0 else '-'} {'' if abs(self.c1) == 1 else frac_str(abs(self.c1))}{'1' if abs(self.c1) == 1 else ''}/h"
        arg = "x" if self.sign > 0 else "-x"
        return f"2F1({self.a}, {self.b}; {third}; {arg})"


def _rising(a: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= a + i
    return out


def hyp_expand(p: HypParams, K: int) -> XSeries:
    """h-expansion of 2F1 through h^K with exact polynomial-in-x coefficients."""
    total = XSeries.zero(K)
    h = RationalH.h()
    for k in range(K + 1):
        # 1 / (c0 + c1/h)_k = prod h / (c1 + (c0 + i) h)
        inv = RationalH.coerce(1)
        for i in range(k):
            inv = inv * h / (p.c1 + (p.c0 + i) * h)
        num = Fraction(_rising(p.a, k) * _rising(p.b, k), factorial(k)) * (p.sign ** k)
        if num == 0:
            continue
        xk = tuple([Fraction(0)] * k + [num])
        ser = expand_series(inv, K)
        total = total + XSeries([xk] + [()] * K).times_h_series(ser)
    return total


# ---------------------------------------------------------------------------
# triple-sum series


def bordemann_F(kind: int, K: int) -> XSeries:
    """F1 (kind 1) or F2 (kind 2) through h^K as polynomials in x.

    h^m coefficient:  sum_{s<=m} sum_{k=1}^{s+1} w(s) k^m (-1)^(m+1-k) / ((s+1-k)!(k-1)!) (1+x)^s,
    with w(s) = s! for kind 1 and (s+1)! for kind 2.
    """
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    out = []
    for m in range(K + 1):
        acc: Poly = ()
        onepx: Poly = (Fraction(1),)
        for s in range(m + 1):
            w = factorial(s) if kind == 1 else factorial(s + 1)
            c = Fraction(0)
            for k in range(1, s + 2):
                c += Fraction(w * k ** m * (-1) ** (m + 1 - k), factorial(s + 1 - k) * factorial(k - 1))
            if c:
                acc = _padd(acc, _pscale(onepx, c))
            onepx = _pmul(onepx, (Fraction(1), Fraction(1)))
        out.append(acc)
    return XSeries(out)


def bordemann_hyp_target(kind: int, K: int) -> XSeries:
    """The hypergeometric series each F is claimed to equal."""
    if kind == 1:
        return hyp_expand(HypParams(1, 1, 1, -1, -1), K)
    inv = expand_series(1 / (1 - RationalH.h()), K)
    return hyp_expand(HypParams(1, 2, 2, -1, -1), K).times_h_series(inv)


# ---------------------------------------------------------------------------
# closed forms of zbar^i * z^j


def closed_form_parts(space: Space, K: int) -> Tuple[XSeries, XSeries]:
    """(P, Q) with  zbar^i * z^j = zbar^i z^j + delta_ij B P + zbar^i z^j B Q."""
    h = RationalH.h()
    s = space.s
    F1 = hyp_expand(HypParams(1, 1, 1, -s, -s), K)
    F2 = hyp_expand(HypParams(1, 2, 2, -s, -s), K)
    P = F1.shift(1)
    pref = expand_series(s * h / (1 - s * h), K)
    Q = F2.times_h_series(pref)
    return P, Q


def _assemble(space: Space, i: int, j: int, P: XSeries, Q: XSeries) -> HSeries:
    zb, z = RingElem.zbar(space, i), RingElem.z(space, j)
    B = RingElem.B(space)
    K = P.order
    out = HSeries.of(zb * z, K)
    if i == j:
        out = out + P.to_ring(space).times_ring(B)
    return out + Q.to_ring(space).times_ring(zb * z * B)


def closed_form_product(space: Space, i: int, j: int, K: int) -> HSeries:
    P, Q = closed_form_parts(space, K)
    return _assemble(space, i, j, P, Q)


def bordemann_product(i: int, j: int, K: int, N: int = 2) -> HSeries:
    """zbar^i *_B z^j on CP^N from the triple-sum series."""
    sp = Space.cpn(N)
    P = bordemann_F(1, K).shift(1)
    Q = bordemann_F(2, K).shift(1)
    return _assemble(sp, i, j, P, Q)


def cp1_single_form(K: int) -> HSeries:
    """|z|^2 + h B^2 2F1(1, 2; 1 - 1/h; -x) on CP^1."""
    sp = Space.cpn(1)
    F = hyp_expand(HypParams(1, 2, 1, -1, -1), K).shift(1)
    B = RingElem.B(sp)
    return HSeries.of(RingElem.abs2(sp), K) + F.to_ring(sp).times_ring(B * B)


# ---------------------------------------------------------------------------
# vacuum identities


def vacuum_series_terms(space: Space, l: int, M: int, drop: Sequence[int] = (), mirror: bool = False) -> Tuple[RingElem, ...]:
    return _vacuum_series_terms(space, l, M, tuple(sorted(drop)), mirror)


@lru_cache(maxsize=32)
def _vacuum_series_terms(space: Space, l: int, M: int, drop: Tuple[int, ...], mirror: bool) -> Tuple[RingElem, ...]:
    """Terms lambda_m T_m (m = 1..M) of the zbar-operator series applied to the vacuum.

    Coefficients are combined exactly before any evaluation, so the removable
    poles of lambda_m against the zeros of prod(-s/h - j) cancel.  With
    ``mirror`` the conjugate terms (right z-operator on the vacuum) are returned.
    """
    vac = vacuum(space)
    raw = _zbar_series_terms(l, vac, M)
    out = []
    for m, Tm in enumerate(raw, start=1):
        if m in drop:
            out.append(RingElem.zero(space))
            continue
        term = Tm.scale(ladder_coefficient(m, space.s))
        out.append(term.conj() if mirror else term)
    return tuple(out)


def vacuum_geometric_closure(space: Space, l: int = 1, M: int = 12, mirror: bool = False) -> Report:
    """Exact check of zbar^l * vac = 0 (or vac * z^l = 0 with ``mirror``).

    Verifies term_(m+1) = (-s|z|^2) term_m for m < M, then sums the geometric
    series in closed form: term_1 / (1 + s|z|^2) = term_1 / B, valid for
    |z|^2 < 1, and checks it cancels the leading generator.
    """
    t0 = time.perf_counter()
    terms = vacuum_series_terms(space, l, M, mirror=mirror)
    ratio = RingElem.abs2(space).scale(-space.s)
    witness = None
    for m in range(1, M):
        if terms[m] != terms[m - 1] * ratio:
            witness = {"failed_ratio_at_m": m}
            break
    gen = RingElem.z(space, l) if mirror else RingElem.zbar(space, l)
    closed = gen * vacuum(space) + terms[0] * RingElem.B(space, -1)
    if witness is None and closed:
        witness = {"closed_sum_residual": str(closed)}
    name = "vac*z" if mirror else "zb*vac"
    return Report(
        check=f"vacuum-geometric:{name}",
        mode="exact",
        params={"space": space.name, "N": space.N, "l": l, "M": M},
        status=FAIL if witness else PASS,
        witness=witness or {"ratio": "-s|z|^2", "closed_sum": "term_1/B"},
        timing=time.perf_counter() - t0,
    )


# Points with rational coordinates so that everything except the factor
# B^(q/h0) can be summed exactly; |z|^2 runs over {0, 0.1, 0.25, 0.4, 0.5}.
_POINTS_N1 = [
    [(0, 0)],
    [("3/10", "1/10")],
    [("3/10", "2/5")],
    [("-3/5", "1/5")],
    [("1/2", "-1/2")],
]
_POINTS_N2 = [
    [(0, 0), (0, 0)],
    [("1/5", "1/10"), ("-1/5", "1/10")],
    [("2/5", "1/5"), ("1/5", "-1/10")],
    [("2/5", "2/5"), ("1/5", "-1/5")],
    [("1/2", "0"), ("-2/5", "3/10")],
]


def default_points(space: Space) -> List[List[Tuple[Fraction, Fraction]]]:
    """Five points (exact real and imaginary parts) with |z|^2 = 0, 0.1, 0.25, 0.4, 0.5."""
    if space.N == 1:
        table = _POINTS_N1
    elif space.N == 2:
        table = _POINTS_N2
    else:
        table = [pt + [(0, 0)] * (space.N - 2) for pt in _POINTS_N2]
    return [[(Fraction(re), Fraction(im)) for re, im in pt] for pt in table]


def _exact_point(pt) -> List[Tuple[Fraction, Fraction]]:
    out = []
    for c in pt:
        if isinstance(c, tuple):
            out.append((Fraction(c[0]), Fraction(c[1])))
        else:
            c = complex(c)
            out.append((Fraction(c.real), Fraction(c.imag)))
    return out


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _cpow(a, k):
    out = (Fraction(1), Fraction(0))
    for _ in range(k):
        out = _cmul(out, a)
    return out


class _ExactEvaluator:
    """Evaluate ring elements at a rational point: exact up to the factor B^(q/h0)."""

    def __init__(self, space: Space, pt, h0: Fraction):
        self.space = space
        self.z = _exact_point(pt)
        if len(self.z) != space.N:
            raise ValueError(f"point has {len(self.z)} coordinates, space has N={space.N}")
        self.zb = [(re, -im) for re, im in self.z]
        r2 = sum(re * re + im * im for re, im in self.z)
        self.B = 1 + space.s * r2
        if space.s < 0 and r2 >= 1:
            raise DomainError("CH^N points must satisfy |z| < 1")
        if self.B <= 0:
            raise DomainError("B must be positive")
        self.h0 = h0

    def exact_parts(self, f: RingElem) -> dict:
        """{q: exact complex sum of the q-class with B^(q/h0) factored out}."""
        out: dict = {}
        for (a, b, p, q), c in f.terms.items():
            cv = eval_at(c, self.h0) if isinstance(c, RationalH) else Fraction(c)
            mono = (cv * self.B ** p, Fraction(0))
            for k in range(self.space.N):
                if a[k]:
                    mono = _cmul(mono, _cpow(self.z[k], a[k]))
                if b[k]:
                    mono = _cmul(mono, _cpow(self.zb[k], b[k]))
            re, im = out.get(q, (Fraction(0), Fraction(0)))
            out[q] = (re + mono[0], im + mono[1])
        return out

    def to_complex(self, parts: dict) -> complex:
        total = 0j
        for q, (re, im) in parts.items():
            total += complex(float(re), float(im)) * float(self.B) ** (q / float(self.h0))
        return total


def _add_parts(acc: dict, more: dict) -> dict:
    out = dict(acc)
    for q, (re, im) in more.items():
        r0, i0 = out.get(q, (Fraction(0), Fraction(0)))
        out[q] = (r0 + re, i0 + im)
    return out


def partial_sum_residuals(
    identity: str,
    space: Space,
    points: Sequence,
    h0,
    M: int,
    l: int = 1,
    drop: Sequence[int] = (),
) -> List[List[float]]:
    """|partial sum through m| for m = 1..M at every point.

    Per-term coefficients are exact rational functions of h (removable poles
    already cancelled); each partial sum is accumulated exactly at the
    rational point and only the common factor B^(q/h0) is taken in floating
    point, so the residual reflects the series tail and not cancellation.
    """
    if identity not in ("zb-vac", "vac-z"):
        raise ValueError(f"unknown identity {identity!r}")
    h0 = Fraction(str(h0)) if isinstance(h0, float) else Fraction(h0)
    if h0 <= 0:
        raise DomainError("h0 must be positive")
    mirror = identity == "vac-z"
    terms = vacuum_series_terms(space, l, M, drop=drop, mirror=mirror)
    gen = RingElem.z(space, l) if mirror else RingElem.zbar(space, l)
    lead = gen * vacuum(space)
    history = []
    for pt in points:
        ev = _ExactEvaluator(space, pt, h0)
        acc = ev.exact_parts(lead)
        partial = []
        for t in terms:
            if t:
                acc = _add_parts(acc, ev.exact_parts(t))
            partial.append(abs(ev.to_complex(acc)))
        history.append(partial)
    return history


RESIDUAL_TOL = 1e-10


def numeric_residual(
    identity: str,
    space: Space,
    points: Optional[Sequence[Sequence[complex]]] = None,
    h0: float = 0.05,
    M: int = 40,
    l: int = 1,
    drop: Sequence[int] = (),
    tol: float = RESIDUAL_TOL,
) -> Report:
    """Max residual of  zb^l * vac  ("zb-vac") or  vac * z^l  ("vac-z") after M series terms."""
    t0 = time.perf_counter()
    points = default_points(space) if points is None else points
    history = partial_sum_residuals(identity, space, points, h0, M, l, drop)
    worst = max(h[-1] for h in history)
    return Report(
        check=f"vacuum-numeric:{identity}",
        mode="numeric",
        params={"space": space.name, "N": space.N, "h0": h0, "M": M, "points": len(points), "drop": list(drop)},
        status=PASS if worst < tol else FAIL,
        witness={"max_residual": format(worst, ".15g"), "tolerance": format(tol, ".15g")},
        timing=time.perf_counter() - t0,
    )


__all__ = [
    "XSeries",
    "HypParams",
    "hyp_expand",
    "bordemann_F",
    "bordemann_hyp_target",
    "closed_form_parts",
    "closed_form_product",
    "bordemann_product",
    "cp1_single_form",
    "vacuum_series_terms",
    "vacuum_geometric_closure",
    "default_points",
    "numeric_residual",
    "partial_sum_residuals",
    "RESIDUAL_TOL",
]
