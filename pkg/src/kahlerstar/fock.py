"""Fock representation built on the vacuum projection e^(-Phi/h).

Two layers:

* the unnormalized basis  Mt[I;J] = z^I zbar^J e^(-Phi/h)  with rational
  (in h) coefficients.  All ground truth lives here and is computed from
  the ring: exact first-order operators formally, or the terminating
  product at h = 1/L;
* the normalized basis  M[I;J] = Mt[I;J] / sqrt(m! n! a_m a_n)  (a = alpha on
  CP^N, beta on CH^N), where ladder coefficients carry square roots and are
  represented by ``Radical``.

Index multisets are sorted 1-based tuples; ``I`` is the holomorphic (upper)
part and ``J`` the antiholomorphic (lower) part.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Optional, Tuple

from .combinatorics import alpha, beta
from .radicals import Radical
from .ring import (
    RingElem,
    Space,
    dbarphi,
    dphi,
    multiplicity_vector,
    multisets,
    vacuum,
)
from .scalars import PoleError, RationalH, eval_at

Multiset = Tuple[int, ...]

GENERATOR_KINDS = ("z", "dPhi", "zb", "dbPhi")


class UnsupportedModeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class FockIndex:
    upper: Multiset = ()
    lower: Multiset = ()

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(sorted(self.upper)))
        object.__setattr__(self, "lower", tuple(sorted(self.lower)))

    @property
    def m(self) -> int:
        return len(self.upper)

    @property
    def n(self) -> int:
        return len(self.lower)

    def key(self) -> str:
        return ",".join(map(str, self.upper)) + ";" + ",".join(map(str, self.lower))

    @classmethod
    def parse(cls, text: str) -> "FockIndex":
        up, _, lo = text.partition(";")
        conv = lambda s: tuple(int(x) for x in s.split(",") if x.strip())
        return cls(conv(up), conv(lo))

    def __str__(self):
        return f"M[{self.key()}]"


@dataclass(frozen=True)
class Generator:
    kind: str  # z | dPhi | zb | dbPhi
    k: int
    side: str = "left"

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.side not in ("left", "right"):
            raise ValueError("side must be left or right")

    def ring_elem(self, space: Space) -> RingElem:
        return {
            "z": RingElem.z,
            "zb": RingElem.zbar,
            "dPhi": dphi,
            "dbPhi": dbarphi,
        }[self.kind](space, self.k)

    def __str__(self):
        return f"{self.side}:{self.kind}[{self.k}]"


def all_generators(N: int) -> List[Generator]:
    return [Generator(kind, k, side) for side in ("left", "right") for kind in GENERATOR_KINDS for k in range(1, N + 1)]


class FockVector:
    """Finite combination of basis labels; ``normalized`` selects M versus Mt."""

    __slots__ = ("space", "terms", "normalized")

    def __init__(self, space: Space, terms: Optional[Dict[FockIndex, object]] = None, normalized: bool = True):
        self.space = space
        self.normalized = normalized
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def basis(cls, space: Space, idx: FockIndex, normalized: bool = True, coeff=None) -> "FockVector":
        if coeff is None:
            coeff = Radical.rational(1) if normalized else Fraction(1)
        return cls(space, {idx: coeff}, normalized)

    def _check(self, other: "FockVector"):
        if self.space != other.space or self.normalized != other.normalized:
            raise ValueError("Fock vectors from different spaces or layers")

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return FockVector(self.space, out, self.normalized)

    def scale(self, c) -> "FockVector":
        return FockVector(self.space, {k: c * v for k, v in self.terms.items()}, self.normalized)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return (
            self.space == other.space
            and self.normalized == other.normalized
            and self.terms.keys() == other.terms.keys()
            and all(self.terms[k] == other.terms[k] for k in self.terms)
        )

    __hash__ = None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0].m, kv[0].n, kv[0].upper, kv[0].lower))

    def __repr__(self):
        body = " + ".join(f"({v})*{'M' if self.normalized else 'Mt'}[{k.key()}]" for k, v in self.sorted_terms())
        return f"FockVector<{self.space}>({body or '0'})"


# ---------------------------------------------------------------------------
# scalars


def sym_delta(j: Multiset, k: Multiset) -> Fraction:
    """(number of bijections matching j onto k) / n!."""
    if len(j) != len(k) or sorted(j) != sorted(k):
        return Fraction(0)
    return Fraction(_mult_factorial(j), factorial(len(j)))


def _mult_factorial(idx: Iterable[int]) -> int:
    out = 1
    for c in Counter(idx).values():
        out *= factorial(c)
    return out


def norm_coeff(m: int, space_sign: int) -> RationalH:
    """alpha_m (CP^N) or beta_m (CH^N), with the value 1 at m = 0."""
    return alpha(m) if space_sign > 0 else beta(m)


def norm_square(m: int, n: int, space_sign: int, h0=None):
    """m! n! a_m a_n, formally or at h = h0 (raising on poles)."""
    val = norm_coeff(m, space_sign) * norm_coeff(n, space_sign) * (factorial(m) * factorial(n))
    if h0 is None:
        return val
    return eval_at(val, h0)


def normalization(m: int, n: int, space, h0=None) -> Radical:
    """The factor 1/sqrt(m! n! a_m a_n) turning Mt into M."""
    s = space if isinstance(space, int) else space.s
    sq = norm_square(m, n, s, h0)
    if sq == 0:
        raise PoleError(f"basis element with sizes ({m},{n}) does not exist at h={h0}")
    return Radical.sqrt(1 / sq) if h0 is None else Radical.sqrt(1 / Fraction(sq))


# ---------------------------------------------------------------------------
# products


def structure_constant(a: FockIndex, b: FockIndex) -> Tuple[Optional[FockIndex], Fraction]:
    """M[a] * M[b] = c * M[target]."""
    if len(a.lower) != len(b.upper):
        return None, Fraction(0)
    c = sym_delta(a.lower, b.upper)
    if not c:
        return None, c
    return FockIndex(a.upper, b.lower), c


def structure_constant_unnormalized(a: FockIndex, b: FockIndex, space_sign: int, h0=None):
    """Mt[a] * Mt[b] = c * Mt[target], c = prod(mult!) a_n when the inner labels agree."""
    if a.lower != b.upper:
        return None, 0
    c = norm_coeff(len(a.lower), space_sign) * _mult_factorial(a.lower)
    return FockIndex(a.upper, b.lower), (c if h0 is None else eval_at(c, h0))


def fock_mul(u: FockVector, v: FockVector) -> FockVector:
    u._check(v)
    out: Dict[FockIndex, object] = {}
    for a, ca in u.sorted_terms():
        for b, cb in v.sorted_terms():
            if u.normalized:
                t, c = structure_constant(a, b)
            else:
                t, c = structure_constant_unnormalized(a, b, u.space.s)
            if t is None:
                continue
            val = ca * cb * c
            out[t] = out[t] + val if t in out else val
    return FockVector(u.space, out, u.normalized)


# ---------------------------------------------------------------------------
# ladder actions


def _remove_one(idx: Multiset, k: int) -> Multiset:
    lst = list(idx)
    lst.remove(k)
    return tuple(lst)


def _ladder_shape(g: Generator) -> Tuple[str, str]:
    """(which label moves, raise|lower)."""
    raising_left = g.kind in ("z", "dbPhi")
    if g.side == "left":
        return "upper", "raise" if raising_left else "lower"
    # right actions: zb and dPhi append to the lower label
    return "lower", "raise" if g.kind in ("zb", "dPhi") else "lower"


def unnormalized_ladder_coefficient(g: Generator, size: int, space_sign: int) -> RationalH:
    """Coefficient of one matching index for the action on Mt with label size ``size``.

    Left (size = m):  z -> 1, dPhi -> h, zb -> h/(1 - s(m-1)h), dbPhi -> 1 - s m h.
    Right (size = n) mirrors it with zb <-> z and dPhi <-> dbPhi.
    """
    s = space_sign
    h = RationalH.h()
    kind = g.kind
    if g.side == "right":
        kind = {"z": "zb", "zb": "z", "dPhi": "dbPhi", "dbPhi": "dPhi"}[kind]
    if kind == "z":
        return RationalH.coerce(1)
    if kind == "dPhi":
        return h
    if kind == "zb":
        return h / (1 - s * (size - 1) * h)
    return 1 - s * size * h


def ladder_apply_unnormalized(g: Generator, u: FockVector) -> FockVector:
    if u.normalized:
        raise ValueError("expects an unnormalized Fock vector")
    label, direction = _ladder_shape(g)
    out: Dict[FockIndex, object] = {}
    for idx, c in u.sorted_terms():
        cur = getattr(idx, label)
        coef = unnormalized_ladder_coefficient(g, len(cur), u.space.s)
        if direction == "raise":
            new = tuple(sorted(cur + (g.k,)))
            mult = 1
        else:
            mult = cur.count(g.k)
            if not mult:
                continue
            new = _remove_one(cur, g.k)
        t = FockIndex(new, idx.lower) if label == "upper" else FockIndex(idx.upper, new)
        val = c * coef * mult
        out[t] = out[t] + val if t in out else val
    return FockVector(u.space, out, normalized=False)


def printed_ladder_square(g: Generator, size: int, space_sign: int) -> RationalH:
    """Square of the per-match normalized coefficient as printed for each generator.

    CP^N uses the (-m + 1/h) family, CH^N the (m + 1/h) family; ``size`` is m
    for left actions and n for right actions.
    """
    h = RationalH.h()
    inv = 1 / h
    m = size
    s = space_sign
    kind = g.kind
    if g.side == "right":
        kind = {"z": "zb", "zb": "z", "dPhi": "dbPhi", "dbPhi": "dPhi"}[kind]
    # -m + 1/h on CP^N becomes m + 1/h on CH^N
    if kind == "z":
        return (m + 1) / (-s * m + inv)
    if kind == "dPhi":
        return h * h * (-s * (m - 1) + inv) / m
    if kind == "zb":
        return 1 / (m * (-s * (m - 1) + inv))
    return h * h * (m + 1) * (-s * m + inv)


def ladder_apply(g: Generator, u: FockVector) -> FockVector:
    """Normalized ladder action with radical coefficients."""
    if not u.normalized:
        raise ValueError("expects a normalized Fock vector")
    label, direction = _ladder_shape(g)
    out: Dict[FockIndex, object] = {}
    for idx, c in u.sorted_terms():
        cur = getattr(idx, label)
        if direction == "raise":
            new = tuple(sorted(cur + (g.k,)))
            mult = 1
        else:
            mult = cur.count(g.k)
            if not mult:
                continue
            new = _remove_one(cur, g.k)
        coef = Radical.sqrt(printed_ladder_square(g, len(cur), u.space.s)) * mult
        t = FockIndex(new, idx.lower) if label == "upper" else FockIndex(idx.upper, new)
        val = c * coef
        out[t] = out[t] + val if t in out else val
    return FockVector(u.space, out, normalized=True)


def derived_ladder_square(g: Generator, m: int, n: int, space_sign: int) -> RationalH:
    """Squared normalized coefficient implied by the unnormalized one.

    c_norm = c * sqrt(N(m', n') / N(m, n)) with N(m, n) = m! n! a_m a_n.
    """
    label, direction = _ladder_shape(g)
    size = m if label == "upper" else n
    c = unnormalized_ladder_coefficient(g, size, space_sign)
    step = 1 if direction == "raise" else -1
    m2, n2 = (m + step, n) if label == "upper" else (m, n + step)
    return c * c * norm_square(m2, n2, space_sign) / norm_square(m, n, space_sign)


# ---------------------------------------------------------------------------
# ring <-> Fock


def fock_to_ring(u: FockVector, L: Optional[int] = None) -> RingElem:
    """Unnormalized vector to a ring element (exact h = 1/L form if L is given)."""
    if u.normalized:
        raise ValueError("convert the unnormalized layer")
    sp = u.space
    N = sp.N
    vac = vacuum(sp) if L is None else RingElem.B(sp, -L)
    out = RingElem.zero(sp)
    for idx, c in u.sorted_terms():
        mono = RingElem.monomial(sp, a=multiplicity_vector(N, idx.upper), b=multiplicity_vector(N, idx.lower))
        out = out + (mono * vac).scale(c)
    return out


def _labels(vec: Tuple[int, ...]) -> Multiset:
    out = []
    for i, e in enumerate(vec):
        out += [i + 1] * e
    return tuple(out)


def ring_to_fock(f: RingElem, L: Optional[int] = None) -> FockVector:
    """Decompose f = P(z, zbar) e^(-Phi/h) with P polynomial into unnormalized labels."""
    sp = f.space
    if L is None:
        body = f * RingElem.B(sp, 0, sp.s)
    else:
        if sp.s < 0:
            raise UnsupportedModeError("h = 1/L mode is only available on CP^N")
        body = f.specialize(L) if not f.is_q_free() or _has_rh(f) else f
        body = body * RingElem.B(sp, L)
    try:
        plain = body.to_plain()
    except ValueError:
        raise ValueError("element is not a polynomial times the vacuum") from None
    terms = {FockIndex(_labels(a), _labels(b)): c for (a, b), c in plain.items()}
    return FockVector(sp, terms, normalized=False)


def _has_rh(f: RingElem) -> bool:
    return any(isinstance(c, RationalH) and not c.is_constant() for c in f.coefficients())


def at_z_zero(f: RingElem) -> RingElem:
    """f(0, zbar): drop every term with a z factor and set B = 1."""
    sp = f.space
    out = {}
    for (a, b, p, q), c in f.terms.items():
        if any(a):
            continue
        key = (a, b, 0, 0)
        out[key] = out.get(key, 0) + c
    return RingElem(sp, {k: v for k, v in out.items() if v})


def at_zbar_zero(f: RingElem) -> RingElem:
    return at_z_zero(f.conj()).conj()


def basis_labels(N: int, max_size: int, lower_max: Optional[int] = None) -> List[FockIndex]:
    lower_max = max_size if lower_max is None else lower_max
    out = []
    for m in range(max_size + 1):
        for I in multisets(N, m):
            for n in range(lower_max + 1):
                for J in multisets(N, n):
                    out.append(FockIndex(I, J))
    return out


def _series_of(c, K: int):
    from .scalars import HTrunc, expand_series

    return expand_series(c, K) if isinstance(c, RationalH) else HTrunc([c], order=K)


def ladder_ground_truth(g: Generator, idx: FockIndex, space: Space, K: int) -> Dict[FockIndex, object]:
    """Action of a generator on Mt[idx], computed in the ring, as {label: h-series mod h^(K+1)}.

    Pointwise and first-order generators are exact.  The others reduce to a
    q-free truncated product through  f * e^(-Phi/h) = f(z, 0) e^(-Phi/h)  and
    e^(-Phi/h) * f = e^(-Phi/h) f(0, zbar):

        zb^k * (z^I vac zbar^J)  = (zb^k * z^I)(z, 0)  vac zbar^J
        (z^I vac zbar^J) * z^k   = z^I vac (zbar^J * z^k)(0, zbar)
    """
    from .star import lstar_dphi, rstar_dbarphi, star_trunc

    N = space.N
    G = g.ring_elem(space)
    zI = RingElem.monomial(space, a=multiplicity_vector(N, idx.upper))
    zJ = RingElem.monomial(space, b=multiplicity_vector(N, idx.lower))
    vac = vacuum(space)
    Mt = zI * zJ * vac
    pointwise = {("left", "z"), ("right", "zb")}
    first_order = {("left", "dPhi"), ("right", "dbPhi")}
    key = (g.side, g.kind)
    out: Dict[FockIndex, object] = {}
    if key in pointwise or key in first_order:
        if key in pointwise:
            res = G * Mt
        elif g.side == "left":
            res = lstar_dphi(g.k, Mt)
        else:
            res = rstar_dbarphi(g.k, Mt)
        for lab, c in ring_to_fock(res).terms.items():
            out[lab] = _series_of(c, K)
        return out
    if g.side == "left":
        ser = star_trunc(G, zI, K)
        reduce, attach = at_zbar_zero, zJ
    else:
        ser = star_trunc(zJ, G, K)
        reduce, attach = at_z_zero, zI
    for n, coeff in enumerate(ser.coeffs):
        piece = reduce(coeff) * attach * vac
        for lab, c in ring_to_fock(piece).terms.items():
            cs = out.setdefault(lab, [Fraction(0)] * (K + 1))
            cs[n] += c
    from .scalars import HTrunc

    return {lab: HTrunc(cs) for lab, cs in out.items() if any(cs)}


def ladder_predicted_series(g: Generator, idx: FockIndex, space: Space, K: int) -> Dict[FockIndex, object]:
    vec = ladder_apply_unnormalized(g, FockVector.basis(space, idx, normalized=False))
    return {lab: _series_of(c, K) for lab, c in vec.terms.items()}


# ---------------------------------------------------------------------------
# matrices at h = 1/L


def fock_states(N: int, L: int) -> List[Multiset]:
    return [I for m in range(L + 1) for I in multisets(N, m)]


def matrix_rep(L: int, N: int, space=None) -> Dict[Generator, List[List[Radical]]]:
    """Left actions on span{M[I;], |I| <= L} at h = 1/L; targets outside the span are dropped."""
    sp = space if isinstance(space, Space) else Space.cpn(N)
    if sp.s < 0:
        raise UnsupportedModeError("finite matrix representations exist only for CP^N")
    states = fock_states(N, L)
    pos = {I: i for i, I in enumerate(states)}
    h0 = Fraction(1, L)
    out = {}
    for kind in GENERATOR_KINDS:
        for k in range(1, N + 1):
            g = Generator(kind, k, "left")
            mat = [[Radical.zero() for _ in states] for _ in states]
            for I in states:
                _, direction = _ladder_shape(g)
                if direction == "raise":
                    if len(I) + 1 > L:
                        continue
                    target = tuple(sorted(I + (k,)))
                    mult = 1
                else:
                    mult = I.count(k)
                    if not mult:
                        continue
                    target = _remove_one(I, k)
                sq = eval_at(printed_ladder_square(g, len(I), sp.s), h0)
                mat[pos[target]][pos[I]] = Radical.sqrt(sq) * mult
            out[g] = mat
    return out


def mat_mul(a: List[List[Radical]], b: List[List[Radical]]) -> List[List[Radical]]:
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), Radical.zero()) for j in range(n)] for i in range(n)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


# ---------------------------------------------------------------------------
# structure-constant tables


def structure_table(N: int, max_size: int, space: Space, h0=None, normalized: bool = True) -> Dict[str, Dict[str, object]]:
    """{ "a|b": {"target": key, "coeff": value} } over all labels of size <= max_size."""
    labels = basis_labels(N, max_size)
    table = {}
    for a in labels:
        for b in labels:
            if normalized:
                t, c = structure_constant(a, b)
            else:
                t, c = structure_constant_unnormalized(a, b, space.s, h0)
            if t is None:
                continue
            table[f"{a.key()}|{b.key()}"] = {"target": t.key(), "coeff": c}
    return table


__all__ = [
    "FockIndex",
    "FockVector",
    "Generator",
    "GENERATOR_KINDS",
    "UnsupportedModeError",
    "all_generators",
    "sym_delta",
    "norm_coeff",
    "norm_square",
    "normalization",
    "structure_constant",
    "structure_constant_unnormalized",
    "fock_mul",
    "unnormalized_ladder_coefficient",
    "ladder_apply_unnormalized",
    "printed_ladder_square",
    "ladder_apply",
    "derived_ladder_square",
    "fock_to_ring",
    "ring_to_fock",
    "at_z_zero",
    "at_zbar_zero",
    "basis_labels",
    "ladder_ground_truth",
    "ladder_predicted_series",
    "fock_states",
    "matrix_rep",
    "mat_mul",
    "mat_sub",
    "structure_table",
]
