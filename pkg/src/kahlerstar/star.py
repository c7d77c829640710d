"""Star products with separation of variables on CP^N and CH^N.

Four routes to the same product:

* exact first-order operators for d_k Phi (left) and d_kbar Phi (right);
* the truncated operator series  L_f = sum_a (1/a!) (d_zbar^a f) (L_zbar - zbar)^a
  built on the z-bar operator series with alpha_m (resp. (-1)^(m-1) beta_m);
* the covariant series  sum_n c_n g..g (D..D f)(Dbar..Dbar g);
* the terminating covariant series at h = 1/L on the finite space M_L.

Truncated results are ``HSeries`` mod h^(K+1).  Multi-indices are
enumerated lexicographically so that every report is reproducible.
"""
from __future__ import annotations

import time
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .combinatorics import c_covariant, ladder_coefficient
from .report import FAIL, PASS, Report
from .ring import (
    RingElem,
    Space,
    apply_D,
    apply_D_bar,
    d_antihol,
    d_hol,
    dbarphi,
    metric_lower,
    multinomial,
    multiplicity_vector,
    multisets,
)
from .scalars import HTrunc, RationalH, eval_at, expand_series


class TruncationModeError(ValueError):
    """Input carries B^(q/h) factors, which the h-grading cannot handle."""


class NotInFockSpace(ValueError):
    pass


class NotTerminating(ValueError):
    pass


# ---------------------------------------------------------------------------


class HSeries:
    """sum_n h^n c_n mod h^(K+1), with h-free ring coefficients."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: Space, coeffs: Sequence[RingElem]):
        self.space = space
        self.coeffs = list(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, space: Space, K: int) -> "HSeries":
        return cls(space, [RingElem.zero(space) for _ in range(K + 1)])

    @classmethod
    def of(cls, f, K: int) -> "HSeries":
        """Lift a ring element (possibly with h-rational coefficients) to a series."""
        if isinstance(f, HSeries):
            return f.truncate(K)
        require_q_free(f)
        sp = f.space
        out = [dict() for _ in range(K + 1)]
        for key, c in f.terms.items():
            if isinstance(c, RationalH):
                ser = expand_series(c, K)
                for n, cn in enumerate(ser.coeffs):
                    if cn:
                        out[n][key] = cn
            else:
                out[0][key] = c
        return cls(sp, [RingElem(sp, t, _normal=True) for t in out])

    def truncate(self, K: int) -> "HSeries":
        cs = self.coeffs[: K + 1]
        cs += [RingElem.zero(self.space)] * (K + 1 - len(cs))
        return HSeries(self.space, cs)

    def __getitem__(self, n: int) -> RingElem:
        return self.coeffs[n]

    def __add__(self, other: "HSeries") -> "HSeries":
        K = min(self.order, other.order)
        return HSeries(self.space, [self.coeffs[n] + other.coeffs[n] for n in range(K + 1)])

    def __sub__(self, other: "HSeries") -> "HSeries":
        K = min(self.order, other.order)
        return HSeries(self.space, [self.coeffs[n] - other.coeffs[n] for n in range(K + 1)])

    def __neg__(self):
        return HSeries(self.space, [-c for c in self.coeffs])

    def times_ring(self, f: RingElem) -> "HSeries":
        return HSeries(self.space, [c * f if c else c for c in self.coeffs])

    def times_scalar_series(self, t: HTrunc) -> "HSeries":
        K = self.order
        out = [RingElem.zero(self.space) for _ in range(K + 1)]
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            for j in range(K + 1 - i):
                tj = t.coeffs[j] if j < len(t.coeffs) else 0
                if tj:
                    out[i + j] = out[i + j] + c.scale(tj)
        return HSeries(self.space, out)

    def shift(self, n: int) -> "HSeries":
        """Multiply by h^n, keeping the order."""
        K = self.order
        z = [RingElem.zero(self.space)] * n
        return HSeries(self.space, (z + self.coeffs)[: K + 1])

    def conj(self) -> "HSeries":
        return HSeries(self.space, [c.conj() for c in self.coeffs])

    def map(self, fn: Callable[[RingElem], RingElem]) -> "HSeries":
        return HSeries(self.space, [fn(c) for c in self.coeffs])

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def first_nonzero(self) -> Optional[int]:
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def __eq__(self, other):
        if not isinstance(other, HSeries):
            return NotImplemented
        K = min(self.order, other.order)
        return all(self.coeffs[n] == other.coeffs[n] for n in range(K + 1))

    __hash__ = None

    def __repr__(self):
        return f"HSeries<{self.space}, K={self.order}>({self})"

    def __str__(self):
        parts = []
        for n, c in enumerate(self.coeffs):
            if not c:
                continue
            s = str(c)
            if n == 0:
                parts.append(s)
            else:
                hn = "h" if n == 1 else f"h^{n}"
                parts.append(f"{hn}*({s})")
        return " + ".join(parts) if parts else "0"


def require_q_free(f) -> None:
    if isinstance(f, HSeries):
        for c in f.coeffs:
            require_q_free(c)
        return
    if not f.is_q_free():
        raise TruncationModeError(
            "element has B^(q/h) factors with q != 0; use exact-Fock (--L) or numeric mode"
        )


# ---------------------------------------------------------------------------
# exact first-order operators


def lstar_dphi(k: int, f: RingElem) -> RingElem:
    """d_k Phi * f = h d_k f + (d_k Phi) f, exact for every ring element."""
    sp = f.space
    h = RationalH.h()
    return d_hol(k, f).scale(h) + RingElem.zbar(sp, k) * RingElem.B(sp, -1) * f


def rstar_dbarphi(k: int, f: RingElem) -> RingElem:
    """f * d_kbar Phi = h d_kbar f + (d_kbar Phi) f."""
    sp = f.space
    h = RationalH.h()
    return d_antihol(k, f).scale(h) + dbarphi(sp, k) * f


# ---------------------------------------------------------------------------
# the z-bar operator series


@lru_cache(maxsize=None)
def _ladder_series(s: int, m: int, K: int) -> HTrunc:
    return expand_series(ladder_coefficient(m, s), K)


def _zbar_series_terms(l: int, g: RingElem, mmax: int, coeff_fn=None) -> List[RingElem]:
    """T_m = (d_jbar Phi)^(m-1)-contracted Dbar^(j_1..j_(m-1)) Dbar^l g for m = 1..mmax.

    Since d_jbar Phi = z^j / B, the contraction over ordered indices is
    B^-(m-1) sum over multisets J of multinomial(J) z^J Dbar^J Dbar^l g.
    """
    sp = g.space
    N = sp.N
    out: List[RingElem] = []
    level = {(): apply_D_bar(l, g)}
    for m in range(1, mmax + 1):
        if m > 1:
            nxt = {}
            for J, hJ in level.items():
                last = J[-1] if J else 1
                for j in range(last, N + 1):
                    nxt[J + (j,)] = apply_D_bar(j, hJ) if hJ else hJ
            level = nxt
        acc = RingElem.zero(sp)
        for J, hJ in level.items():
            if not hJ:
                continue
            mult = multiplicity_vector(N, J)
            zJ = RingElem.monomial(sp, a=mult, p=-(m - 1))
            acc = acc + (zJ * hJ).scale(multinomial(mult))
        out.append(acc)
    return out


def lzbar_minus_zbar(l: int, X: HSeries, coeffs=None) -> HSeries:
    """(L_{zbar^l} - zbar^l) applied to a series, mod h^(K+1)."""
    sp = X.space
    K = X.order
    out = [RingElem.zero(sp) for _ in range(K + 1)]
    for n, xn in enumerate(X.coeffs):
        if not xn or n >= K:
            continue
        mmax = K - n
        T = _zbar_series_terms(l, xn, mmax)
        for m in range(1, mmax + 1):
            Tm = T[m - 1]
            if not Tm:
                continue
            ser = coeffs(m, K) if coeffs else _ladder_series(sp.s, m, K)
            for j in range(m, K - n + 1):
                cj = ser.coeffs[j]
                if cj:
                    out[n + j] = out[n + j] + Tm.scale(cj)
    return HSeries(sp, out)


def lstar_zbar_trunc(l: int, g, K: int, coeffs=None) -> HSeries:
    """zbar^l * g mod h^(K+1)."""
    X = HSeries.of(g, K)
    sp = X.space
    sp.check_index(l)
    zb = RingElem.zbar(sp, l)
    return X.times_ring(zb) + lzbar_minus_zbar(l, X, coeffs)


def rstar_z_trunc(l: int, f, K: int) -> HSeries:
    """f * z^l mod h^(K+1): the z-operator series is the conjugate of the zbar one."""
    X = HSeries.of(f, K)
    return lstar_zbar_trunc(l, X.conj(), K).conj()


# ---------------------------------------------------------------------------
# full truncated product


def _multi_indices(N: int, maxdeg: int) -> List[Tuple[int, ...]]:
    """Count vectors with |a| <= maxdeg, ordered by degree then lexicographically."""
    out = []
    for d in range(maxdeg + 1):
        for J in multisets(N, d):
            out.append(multiplicity_vector(N, J))
    return out


def _x_table(G: HSeries, coeffs=None) -> Dict[Tuple[int, ...], HSeries]:
    """(L_zbar - zbar)^a G for every multi-index |a| <= K."""
    sp = G.space
    N, K = sp.N, G.order
    table = {(0,) * N: G}
    for a in _multi_indices(N, K):
        if sum(a) == 0:
            continue
        # peel off the last nonzero direction
        l = max(i for i in range(N) if a[i])
        prev = a[:l] + (a[l] - 1,) + a[l + 1:]
        table[a] = lzbar_minus_zbar(l + 1, table[prev], coeffs)
    return table


def _antihol_derivatives(f: RingElem, maxdeg: int) -> Dict[Tuple[int, ...], RingElem]:
    N = f.space.N
    out = {(0,) * N: f}
    for a in _multi_indices(N, maxdeg):
        if sum(a) == 0:
            continue
        l = max(i for i in range(N) if a[i])
        prev = a[:l] + (a[l] - 1,) + a[l + 1:]
        out[a] = d_antihol(l + 1, out[prev]) if out[prev] else out[prev]
    return out


def _afact(a: Tuple[int, ...]) -> int:
    out = 1
    for x in a:
        out *= factorial(x)
    return out


def star_series(F: HSeries, G: HSeries, coeffs=None) -> HSeries:
    """F * G for two series, computed as L_F G."""
    sp = F.space
    if G.space != sp:
        raise ValueError("mixed spaces")
    K = min(F.order, G.order)
    F, G = F.truncate(K), G.truncate(K)
    X = _x_table(G, coeffs)
    out = [RingElem.zero(sp) for _ in range(K + 1)]
    for a_ord, fa in enumerate(F.coeffs):
        if not fa:
            continue
        derivs = _antihol_derivatives(fa, K - a_ord)
        for alpha_idx, dfa in derivs.items():
            if not dfa:
                continue
            inv = Fraction(1, _afact(alpha_idx))
            Xa = X[alpha_idx]
            for n in range(sum(alpha_idx), K - a_ord + 1):
                xn = Xa.coeffs[n]
                if xn:
                    out[a_ord + n] = out[a_ord + n] + (dfa * xn).scale(inv)
    return HSeries(sp, out)


def star_trunc(f, g, K: int, coeffs=None) -> HSeries:
    """f * g mod h^(K+1) via L_f = sum_a (1/a!) (d_zbar^a f)(L_zbar - zbar)^a."""
    return star_series(HSeries.of(f, K), HSeries.of(g, K), coeffs)


def star_trunc_right(f, g, K: int) -> HSeries:
    """f * g computed as R_g f = sum_b (1/b!) (d_z^b g)(R_z - z)^b f."""
    F, G = HSeries.of(f, K), HSeries.of(g, K)
    return star_series(G.conj(), F.conj()).conj()


# ---------------------------------------------------------------------------
# covariant form


@lru_cache(maxsize=None)
def _orderings(J: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    return tuple(sorted(set(permutations(J))))


class _MetricCache:
    def __init__(self, space: Space):
        self.space = space
        self.g = {(j, k): metric_lower(space, j, k) for j in range(1, space.N + 1) for k in range(1, space.N + 1)}
        self.w: dict = {}

    def weight(self, J: Tuple[int, ...], Kk: Tuple[int, ...]) -> RingElem:
        """sum over ordered (j, k) sequences with multisets J, K of prod g_{j_i kbar_i}."""
        key = (J, Kk)
        if key in self.w:
            return self.w[key]
        sp = self.space
        total = RingElem.zero(sp)
        for ks in _orderings(Kk):
            prod = RingElem.const(sp)
            for j, k in zip(J, ks):
                prod = prod * self.g[(j, k)]
            total = total + prod
        total = total.scale(len(_orderings(J)))
        self.w[key] = total
        return total


def _D_table(f: RingElem, maxdeg: int, op) -> Dict[int, Dict[Tuple[int, ...], RingElem]]:
    N = f.space.N
    levels = {0: {(): f}}
    for n in range(1, maxdeg + 1):
        cur = {}
        for J, val in levels[n - 1].items():
            last = J[-1] if J else 1
            for j in range(last, N + 1):
                cur[J + (j,)] = op(j, val) if val else val
        levels[n] = cur
    return levels


def covariant_terms(f: RingElem, g: RingElem, nmax: int, metric: _MetricCache | None = None) -> List[RingElem]:
    """Bidifferential pieces  g..g (D^J f)(Dbar^K g)  for n = 0..nmax (without c_n)."""
    sp = f.space
    metric = metric or _MetricCache(sp)
    Fd = _D_table(f, nmax, apply_D)
    Gd = _D_table(g, nmax, apply_D_bar)
    out = []
    for n in range(nmax + 1):
        acc = RingElem.zero(sp)
        for J, fJ in Fd[n].items():
            if not fJ:
                continue
            for Kk, gK in Gd[n].items():
                if not gK:
                    continue
                acc = acc + metric.weight(J, Kk) * fJ * gK
        out.append(acc)
    return out


def star_covariant(f, g, K: int) -> HSeries:
    """f * g mod h^(K+1) via sum_n c_n(h) g_{j1 k1bar}..(D^j.. f)(D^kbar.. g)."""
    F, G = HSeries.of(f, K), HSeries.of(g, K)
    sp = F.space
    metric = _MetricCache(sp)
    out = HSeries.zero(sp, K)
    cser = [expand_series(c_covariant(n, sp.s), K) for n in range(K + 1)]
    for a, fa in enumerate(F.coeffs):
        if not fa:
            continue
        for b, gb in enumerate(G.coeffs):
            if not gb or a + b > K:
                continue
            rest = K - a - b
            pieces = covariant_terms(fa, gb, rest, metric)
            for n, piece in enumerate(pieces):
                if not piece:
                    continue
                for j in range(n, rest + 1):
                    cj = cser[n].coeffs[j]
                    if cj:
                        idx = a + b + j
                        out.coeffs[idx] = out.coeffs[idx] + piece.scale(cj)
    return out


# ---------------------------------------------------------------------------
# exact mode at h = 1/L


def _exact_input(f: RingElem, L: int) -> RingElem:
    if f.space.s < 0:
        raise ValueError("exact finite mode is only available on CP^N")
    if any(isinstance(c, RationalH) for c in f.coefficients()) or not f.is_q_free():
        f = f.specialize(L)
    return f


def ml_coordinates(f: RingElem, L: int) -> Dict:
    """Coefficients of f in the spanning set z^a zbar^b / B^L of M_L."""
    try:
        plain = (f * RingElem.B(f.space, L)).to_plain()
    except ValueError:
        raise NotInFockSpace("element is not of the form polynomial / B^L") from None
    for (a, b) in plain:
        if sum(a) > L or sum(b) > L:
            raise NotInFockSpace(f"monomial degree ({sum(a)}, {sum(b)}) exceeds L={L}")
    return plain


def in_ML(f: RingElem, L: int) -> bool:
    try:
        ml_coordinates(_exact_input(f, L), L)
    except NotInFockSpace:
        return False
    return True


def _annihilated(f: RingElem, L: int, op) -> bool:
    table = _D_table(f, L + 1, op)
    return all(not v for v in table[L + 1].values())


def star_exact(f: RingElem, g: RingElem, L: int) -> RingElem:
    """Terminating covariant series at h = 1/L.

    Needs D^(L+1) f = 0 and Dbar^(L+1) g = 0.  One vanishing factor is not
    enough: c_n has a simple pole at h = 1/L for n > L, and a single zero only
    cancels it to a finite, generally nonzero, term.
    """
    f, g = _exact_input(f, L), _exact_input(g, L)
    if not _annihilated(f, L, apply_D):
        raise NotTerminating(f"D^(L+1) f does not vanish at L={L}")
    if not _annihilated(g, L, apply_D_bar):
        raise NotTerminating(f"Dbar^(L+1) g does not vanish at L={L}")
    sp = f.space
    h0 = Fraction(1, L)
    pieces = covariant_terms(f, g, L)
    out = RingElem.zero(sp)
    for n, piece in enumerate(pieces):
        if piece:
            out = out + piece.scale(eval_at(c_covariant(n, sp.s), h0))
    return out


def star_exact_fock(f: RingElem, g: RingElem, L: int) -> RingElem:
    """f * g on M_L at h = 1/L; both factors and the result lie in M_L."""
    f, g = _exact_input(f, L), _exact_input(g, L)
    for x in (f, g):
        ml_coordinates(x, L)
    out = star_exact(f, g, L)
    ml_coordinates(out, L)
    return out


# ---------------------------------------------------------------------------
# verification


def _karabegov_residual(l: int, i: int, g: RingElem, K: int, coeffs=None) -> HSeries:
    sp = g.space
    G = HSeries.of(g, K)

    def R(X: HSeries) -> HSeries:
        # h d_ibar + d_ibar Phi
        return X.map(lambda c: d_antihol(i, c)).shift(1) + X.times_ring(dbarphi(sp, i))

    def Lz(X: HSeries) -> HSeries:
        return X.times_ring(RingElem.zbar(sp, l)) + lzbar_minus_zbar(l, X, coeffs)

    return Lz(R(G)) - R(Lz(G))


def verify_karabegov(space: Space, l: int, K: int, samples: Sequence[RingElem], coeffs=None) -> Report:
    """[L_{zbar^l}, h d_ibar + d_ibar Phi] = 0 mod h^(K+1) on every sample, for every i."""
    t0 = time.perf_counter()
    witness = None
    for si, g in enumerate(samples):
        require_q_free(g)
        for i in range(1, space.N + 1):
            res = _karabegov_residual(l, i, g, K, coeffs)
            n = res.first_nonzero()
            if n is not None:
                witness = {"sample": si, "ibar": i, "order": n, "residual": str(res.coeffs[n])}
                break
        if witness:
            break
    return Report(
        check="karabegov",
        mode="trunc",
        params={"space": space.name, "N": space.N, "l": l, "K": K, "samples": len(samples)},
        status=FAIL if witness else PASS,
        witness=witness or {"max_order_checked": K},
        timing=time.perf_counter() - t0,
    )


def corrupted_coefficients(m_bad: int = 2, delta: Fraction = Fraction(1)):
    """Ladder coefficients with alpha_(m_bad) perturbed by delta h^(m_bad); negative control."""

    def coeffs(m: int, K: int) -> HTrunc:
        from .combinatorics import alpha

        ser = expand_series(alpha(m), K)
        if m == m_bad and m <= K:
            cs = list(ser.coeffs)
            cs[m] += delta
            ser = HTrunc(cs)
        return ser

    return coeffs


def c1(f, g, K: int = 1) -> RingElem:
    return star_trunc(f, g, max(K, 1))[1]


__all__ = [
    "HSeries",
    "TruncationModeError",
    "NotInFockSpace",
    "NotTerminating",
    "lstar_dphi",
    "rstar_dbarphi",
    "lstar_zbar_trunc",
    "rstar_z_trunc",
    "lzbar_minus_zbar",
    "star_trunc",
    "star_trunc_right",
    "star_series",
    "star_covariant",
    "covariant_terms",
    "star_exact",
    "star_exact_fock",
    "ml_coordinates",
    "in_ML",
    "verify_karabegov",
    "corrupted_coefficients",
    "require_q_free",
]
