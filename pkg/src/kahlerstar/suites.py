"""Named verification suites.

Each suite is a function ``SuiteConfig -> list[Report]``.  Report order is
fixed by the loops below, so the JSON emitted for a suite depends only on the
configuration (and seed), never on timing.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .combinatorics import alpha, beta, coeff_a, c_covariant, ladder_coefficient, stirling2
from .expr import format_ring, parse_expr
from .fock import (
    FockVector,
    Generator,
    all_generators,
    basis_labels,
    derived_ladder_square,
    fock_mul,
    fock_to_ring,
    at_z_zero,
    at_zbar_zero,
    ladder_ground_truth,
    ladder_predicted_series,
    mat_mul,
    mat_sub,
    matrix_rep,
    norm_coeff,
    norm_square,
    printed_ladder_square,
    ring_to_fock,
    structure_constant,
    structure_constant_unnormalized,
)
from .oracles import (
    HypParams,
    bordemann_F,
    bordemann_hyp_target,
    bordemann_product,
    closed_form_product,
    cp1_single_form,
    hyp_expand,
    numeric_residual,
    partial_sum_residuals,
    default_points,
    vacuum_geometric_closure,
)
from .radicals import Radical
from .report import FAIL, PASS, Report
from .ring import RingElem, Space, dbarphi, dphi, multisets, poisson_antisym, vacuum
from .scalars import RationalH, eval_at, expand_series
from .star import (
    HSeries,
    corrupted_coefficients,
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


@dataclass(frozen=True)
class SuiteConfig:
    """Knobs shared by all suites; ``None`` means the suite's own default."""

    spaces: Tuple[str, ...] = ("cpn", "chn")
    dims: Optional[Tuple[int, ...]] = None
    order: Optional[int] = None
    L: Optional[int] = None
    seed: int = 0
    count: int = 20
    h0: float = 0.05
    terms: int = 40

    def space_list(self, default_dims: Sequence[int]) -> List[Space]:
        dims = self.dims or tuple(default_dims)
        return [Space.from_name(name, N) for N in dims for name in self.spaces]

    def k(self, default: int) -> int:
        return default if self.order is None else self.order


def _report(check, mode, params, witness_fail, ok_witness=None, timing=None) -> Report:
    return Report(
        check=check,
        mode=mode,
        params=params,
        status=FAIL if witness_fail is not None else PASS,
        witness=witness_fail if witness_fail is not None else ok_witness,
        timing=timing,
    )


def _sp_params(sp: Space, **extra) -> dict:
    return {"space": sp.name, "N": sp.N, **extra}


def _series_diff(a: HSeries, b: HSeries):
    """Witness for the first differing order, or None."""
    K = min(a.order, b.order)
    for n in range(K + 1):
        if a.coeffs[n] != b.coeffs[n]:
            return {"order": n, "lhs": format_ring(a.coeffs[n]), "rhs": format_ring(b.coeffs[n])}
    return None


def _ring_diff(a: RingElem, b: RingElem):
    return None if a == b else {"lhs": format_ring(a), "rhs": format_ring(b)}


# ---------------------------------------------------------------------------
# shared inputs


BASKET_SOURCES = (
    "1",
    "z[1]",
    "zb[1]",
    "z[1]*zb[1]",
    "B(1,0)",
    "dPhi[1]",
    "z[1]^2*zb[{N}]*B(-1,0)",
    "zb[1]^2 + z[{N}]*B(-2,0)",
)


def basket(space: Space) -> List[RingElem]:
    """Eight fixed q-free ring elements used by several suites."""
    return [parse_expr(src.format(N=space.N), space) for src in BASKET_SOURCES]


def random_polynomial(space: Space, rng: random.Random, degree: int = 2, nterms: int = 3) -> RingElem:
    """Sum of ``nterms`` monomials z^a zbar^b with |a| + |b| <= degree and small integer coefficients."""
    N = space.N
    monos = []
    for total in range(degree + 1):
        for da in range(total + 1):
            for a in _compositions(da, N):
                for b in _compositions(total - da, N):
                    monos.append((a, b))
    out = RingElem.zero(space)
    for a, b in rng.sample(monos, nterms):
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        out = out + RingElem.monomial(space, a=a, b=b, c=c)
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# suites


def suite_stirling(cfg: SuiteConfig) -> List[Report]:
    K = cfg.k(12)
    out = []
    w = None
    t0 = time.perf_counter()
    for m in range(2, K + 1):
        ser = expand_series(alpha(m), K)
        for n in range(m, K + 1):
            if ser.coeffs[n] != stirling2(n - 1, m - 1):
                w = {"m": m, "n": n, "series": str(ser.coeffs[n]), "stirling": stirling2(n - 1, m - 1)}
                break
        if w:
            break
    out.append(_report("stirling:alpha-series", "formal", {"K": K}, w, {"pairs_checked": "2<=m<=n<=%d" % K}, time.perf_counter() - t0))

    w = None
    for n in range(2, K + 1):
        for m in range(2, n + 1):
            if coeff_a(n, m) != stirling2(n - 1, m - 1):
                w = {"m": m, "n": n, "table": coeff_a(n, m), "stirling": stirling2(n - 1, m - 1)}
                break
        if w:
            break
    out.append(_report("stirling:coefficient-table", "formal", {"K": K}, w, {"rows": K}))

    w = None
    h = RationalH.h()
    for m in range(1, K + 1):
        # alpha_(m+1) (1 - m h) = h alpha_m  and  beta_m(h) = (-1)^m alpha_m(-h)
        if alpha(m + 1) * (1 - m * h) != h * alpha(m):
            w = {"relation": "alpha recursion", "m": m}
            break
        if beta(m + 1) * (1 + m * h) != h * beta(m):
            w = {"relation": "beta recursion", "m": m}
            break
        if c_covariant(m, 1) * factorial(m) != alpha(m):
            w = {"relation": "c_n = alpha_n/n!", "m": m}
            break
    out.append(_report("stirling:recursions", "formal", {"K": K}, w, {"m_max": K}))
    return out


def suite_karabegov(cfg: SuiteConfig) -> List[Report]:
    K = cfg.k(6)
    out = []
    for sp in cfg.space_list((1, 2)):
        b = basket(sp)
        for l in range(1, sp.N + 1):
            out.append(verify_karabegov(sp, l, K, b))
    # a perturbed alpha_2 must be caught
    sp = Space.cpn(1)
    bad = verify_karabegov(sp, 1, K, basket(sp), coeffs=corrupted_coefficients(2))
    out.append(
        Report(
            check="karabegov:negative-control",
            mode="trunc",
            params=_sp_params(sp, K=K, perturbed_m=2),
            status=PASS if not bad.passed else FAIL,
            witness={"detected": not bad.passed, "residual_witness": bad.witness},
            timing=bad.timing,
        )
    )
    return out


def suite_associativity(cfg: SuiteConfig) -> List[Report]:
    K = cfg.k(4)
    out = []
    for sp in cfg.space_list((2,)):
        rng = random.Random(f"{cfg.seed}:{sp.name}:{sp.N}")
        t0 = time.perf_counter()
        w = None
        for t in range(cfg.count):
            f, g, k = (random_polynomial(sp, rng) for _ in range(3))
            F, G, H = (HSeries.of(x, K) for x in (f, g, k))
            lhs = star_series(star_series(F, G), H)
            rhs = star_series(F, star_series(G, H))
            d = _series_diff(lhs, rhs)
            if d:
                w = {"triple": t, "f": format_ring(f), "g": format_ring(g), "h": format_ring(k), **d}
                break
        out.append(
            _report(
                "associativity",
                "trunc",
                _sp_params(sp, K=K, seed=cfg.seed, triples=cfg.count),
                w,
                {"triples_checked": cfg.count},
                time.perf_counter() - t0,
            )
        )
    return out


def suite_hyp_closed_form(cfg: SuiteConfig) -> List[Report]:
    K = cfg.k(6)
    out = []
    for sp in cfg.space_list((2,)):
        t0 = time.perf_counter()
        w = None
        for i in range(1, sp.N + 1):
            for j in range(1, sp.N + 1):
                d = _series_diff(star_trunc(RingElem.zbar(sp, i), RingElem.z(sp, j), K), closed_form_product(sp, i, j, K))
                if d:
                    w = {"i": i, "j": j, **d}
                    break
            if w:
                break
        out.append(_report("hyp-closed-form:zb*z", "trunc", _sp_params(sp, K=K), w, {"pairs": sp.N ** 2}, time.perf_counter() - t0))

    # CH^N parameters are the CP^N ones under h -> -h, x -> -x
    w = None
    for a, b, c0 in ((1, 1, 1), (1, 2, 2)):
        cp = hyp_expand(HypParams(a, b, c0, -1, -1), K)
        ch = hyp_expand(HypParams(a, b, c0, 1, 1), K)
        if cp.substitute(-1, -1) != ch:
            w = {"a": a, "b": b, "c0": c0}
            break
    out.append(_report("hyp-closed-form:h-reflection", "formal", {"K": K}, w, {"families": 2}))
    return out


def suite_bordemann(cfg: SuiteConfig) -> List[Report]:
    K = cfg.k(6)
    out = []
    for kind in (1, 2):
        F, T = bordemann_F(kind, K), bordemann_hyp_target(kind, K)
        w = None if F == T else {"bordemann": str(F), "hypergeometric": str(T)}
        out.append(_report(f"bordemann:F{kind}", "formal", {"K": K, "kind": kind}, w, {"through_order": K}))
    N = (cfg.dims or (2,))[0]
    sp = Space.cpn(N)
    w = None
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            d = _series_diff(bordemann_product(i, j, K, N), closed_form_product(sp, i, j, K))
            if d:
                w = {"i": i, "j": j, **d}
    out.append(_report("bordemann:product", "trunc", _sp_params(sp, K=K), w, {"pairs": N * N}))
    return out


def suite_covariant_equivalence(cfg: SuiteConfig) -> List[Report]:
    K = cfg.k(5)
    out = []
    for sp in cfg.space_list((1, 2)):
        t0 = time.perf_counter()
        b = basket(sp)
        w = None
        for fi, f in enumerate(b):
            for gi, g in enumerate(b):
                d = _series_diff(star_trunc(f, g, K), star_covariant(f, g, K))
                if d:
                    w = {"f": BASKET_SOURCES[fi], "g": BASKET_SOURCES[gi], **d}
                    break
            if w:
                break
        out.append(_report("covariant-equivalence", "trunc", _sp_params(sp, K=K), w, {"pairs": len(b) ** 2}, time.perf_counter() - t0))
    return out


def _normalized_fock_check(L: int) -> Report:
    """Mt products at h = 1/L on CP^1, normalized, against the matrix-unit constants."""
    t0 = time.perf_counter()
    sp = Space.cpn(1)
    h0 = Fraction(1, L)
    labs = basis_labels(1, L)
    w = None
    for a in labs:
        for b in labs:
            ra = fock_to_ring(FockVector.basis(sp, a, False), L)
            rb = fock_to_ring(FockVector.basis(sp, b, False), L)
            got = ring_to_fock(star_exact_fock(ra, rb, L), L)
            # coefficient of M[t] = c sqrt(N(t)) / sqrt(N(a) N(b)); compare sign and square
            norm = {}
            for t, c in got.terms.items():
                sq = Fraction(c) ** 2 * norm_square(t.m, t.n, 1, h0) / (norm_square(a.m, a.n, 1, h0) * norm_square(b.m, b.n, 1, h0))
                norm[t.key()] = (sq, c > 0)
            tgt, c = structure_constant(a, b)
            exp = {} if tgt is None else {tgt.key(): (c * c, True)}
            if norm != exp:
                w = {"a": a.key(), "b": b.key(), "got": {k: str(v[0]) for k, v in norm.items()}, "expected": {k: str(v[0]) for k, v in exp.items()}}
                break
        if w:
            break
    return _report(
        "fock:matrix-units", "exact", {"space": "cpn", "N": 1, "L": L}, w, {"products": len(labs) ** 2}, time.perf_counter() - t0
    )


def _unnormalized_fock_check(N: int, L: int) -> Report:
    t0 = time.perf_counter()
    sp = Space.cpn(N)
    h0 = Fraction(1, L)
    labs = basis_labels(N, L)
    w = None
    for a in labs:
        for b in labs:
            ra = fock_to_ring(FockVector.basis(sp, a, False), L)
            rb = fock_to_ring(FockVector.basis(sp, b, False), L)
            got = ring_to_fock(star_exact_fock(ra, rb, L), L).terms
            tgt, c = structure_constant_unnormalized(a, b, 1, h0)
            exp = {} if tgt is None else {tgt: c}
            if got != exp:
                w = {"a": a.key(), "b": b.key(), "got": {k.key(): str(v) for k, v in got.items()}, "expected": {k.key(): str(v) for k, v in exp.items()}}
                break
        if w:
            break
    return _report(
        "fock:structure-constants", "exact", {"space": "cpn", "N": N, "L": L}, w, {"products": len(labs) ** 2}, time.perf_counter() - t0
    )


def _fock_mul_associativity(N: int, size: int, space: Space) -> Report:
    labs = basis_labels(N, size)
    w = None
    for normalized in (True, False):
        vecs = [FockVector.basis(space, x, normalized) for x in labs]
        for u in vecs:
            for v in vecs:
                uv = fock_mul(u, v)
                for x in vecs:
                    if fock_mul(uv, x) != fock_mul(u, fock_mul(v, x)):
                        w = {"normalized": normalized, "u": repr(u), "v": repr(v), "w": repr(x)}
                        break
                if w:
                    break
            if w:
                break
        if w:
            break
    return _report("fock:associativity", "formal", _sp_params(space, max_size=size), w, {"labels": len(labs)})


def _closure(N: int, size: int) -> Report:
    """Products of labels with sizes <= size stay inside the same finite label set."""
    labs = set(basis_labels(N, size))
    w = None
    for a in labs:
        for b in labs:
            t, _ = structure_constant(a, b)
            if t is not None and t not in labs:
                w = {"a": a.key(), "b": b.key(), "target": t.key()}
    return _report("fock:closure", "formal", {"N": N, "max_size": size}, w, {"labels": len(labs)})


def _commutator_matrix(N: int, L: int) -> Report:
    """rep(dPhi_k) rep(z_k) - rep(z_k) rep(dPhi_k) = h on states below the top level."""
    reps = matrix_rep(L, N)
    h0 = Fraction(1, L)
    w = None
    for k in range(1, N + 1):
        Z, P = reps[Generator("z", k)], reps[Generator("dPhi", k)]
        C = mat_sub(mat_mul(P, Z), mat_mul(Z, P))
        states = [I for m in range(L + 1) for I in multisets(N, m)]
        for j, I in enumerate(states):
            if len(I) >= L:
                continue
            for i in range(len(states)):
                want = Radical.rational(h0 if i == j else 0)
                if C[i][j] != want:
                    w = {"k": k, "row": i, "col": j, "entry": str(C[i][j])}
                    break
            if w:
                break
    return _report("fock:commutator-matrix", "exact", {"space": "cpn", "N": N, "L": L}, w, {"relation": "[dPhi, z] = h"})


def suite_fock_matrix_units(cfg: SuiteConfig) -> List[Report]:
    out = []
    if cfg.dims is None and cfg.L is None:
        targets = [(1, 3), (2, 2)]
    else:
        dims = cfg.dims or (1,)
        targets = [(N, cfg.L if cfg.L is not None else (3 if N == 1 else 2)) for N in dims]
    for N, L in targets:
        if N == 1:
            out.append(_normalized_fock_check(L))
        out.append(_unnormalized_fock_check(N, L))
        out.append(_commutator_matrix(N, L))
    for N in sorted({N for N, _ in targets} | {1, 2}):
        out.append(_closure(N, 2))
        for name in cfg.spaces:
            out.append(_fock_mul_associativity(N, 2 if N == 1 else 1, Space.from_name(name, N)))
    return out


def suite_ladder(cfg: SuiteConfig) -> List[Report]:
    K = cfg.k(4)
    out = []
    for sp in cfg.space_list((1, 2)):
        t0 = time.perf_counter()
        w = None
        for g in all_generators(sp.N):
            for m in range(5):
                for n in range(5):
                    size = m if g.side == "left" else n
                    if not _ladder_defined(g, size):
                        continue
                    p = printed_ladder_square(g, size, sp.s)
                    d = derived_ladder_square(g, m, n, sp.s)
                    if p != d:
                        w = {"generator": str(g), "m": m, "n": n, "printed": str(p), "derived": str(d)}
                        break
                if w:
                    break
            if w:
                break
        out.append(_report("ladder:squared-coefficients", "formal", _sp_params(sp, max_m=4, max_n=4), w, {"generators": 8 * sp.N}, time.perf_counter() - t0))

        t0 = time.perf_counter()
        w = None
        size = 4 if sp.N == 1 else 2
        for g in all_generators(sp.N):
            for idx in basis_labels(sp.N, size):
                a = ladder_ground_truth(g, idx, sp, K)
                b = ladder_predicted_series(g, idx, sp, K)
                if a != b:
                    w = {"generator": str(g), "label": idx.key(), "ring": {k.key(): str(v) for k, v in a.items()}, "predicted": {k.key(): str(v) for k, v in b.items()}}
                    break
            if w:
                break
        out.append(_report("ladder:ring-ground-truth", "trunc", _sp_params(sp, K=K, max_size=size), w, {"labels": len(basis_labels(sp.N, size))}, time.perf_counter() - t0))
    return out


def _ladder_defined(g: Generator, size: int) -> bool:
    # lowering needs a nonempty label
    lowering = {("left", "dPhi"), ("left", "zb"), ("right", "z"), ("right", "dbPhi")}
    return size > 0 or (g.side, g.kind) not in lowering


def _vacuum_exact(sp: Space) -> List[Report]:
    vac = vacuum(sp)
    out = []
    for k in range(1, sp.N + 1):
        r1 = lstar_dphi(k, vac)
        r2 = rstar_dbarphi(k, vac)
        out.append(_report("vacuum:dPhi*vac", "exact", _sp_params(sp, k=k), None if not r1 else {"residual": format_ring(r1)}, {"residual": "0"}))
        out.append(_report("vacuum:vac*dbPhi", "exact", _sp_params(sp, k=k), None if not r2 else {"residual": format_ring(r2)}, {"residual": "0"}))
    for mirror in (False, True):
        out.append(vacuum_geometric_closure(sp, 1, 12, mirror))
    return out


def _fmt(x: float) -> str:
    return format(x, ".15g")


def suite_vacuum_numeric(cfg: SuiteConfig) -> List[Report]:
    out = []
    spaces = cfg.space_list((1,))
    for sp in spaces:
        out.extend(_vacuum_exact(sp))
    for sp in spaces:
        for ident in ("zb-vac", "vac-z"):
            r = numeric_residual(ident, sp, h0=cfg.h0, M=cfg.terms)
            out.append(r)
    # partial sums must shrink, and dropping one term must leave a visible residual
    sp = spaces[0]
    t0 = time.perf_counter()
    hist = partial_sum_residuals("zb-vac", sp, default_points(sp), cfg.h0, cfg.terms)
    w = None
    for pi, row in enumerate(hist):
        for m in range(1, len(row)):
            if row[m] > row[m - 1] * (1 + 1e-9) + 1e-300:
                w = {"point": pi, "m": m + 1, "before": _fmt(row[m - 1]), "after": _fmt(row[m])}
                break
        if w:
            break
    out.append(_report("vacuum-numeric:monotone", "numeric", _sp_params(sp, h0=cfg.h0, M=cfg.terms), w, {"points": len(hist)}, time.perf_counter() - t0))
    bad = numeric_residual("zb-vac", sp, h0=cfg.h0, M=cfg.terms, drop=[2])
    worst = bad.witness["max_residual"]
    out.append(
        Report(
            check="vacuum-numeric:negative-control",
            mode="numeric",
            params=_sp_params(sp, h0=cfg.h0, M=cfg.terms, drop=[2]),
            status=PASS if float(worst) > 1e-4 else FAIL,
            witness={"max_residual": worst, "threshold": "0.0001"},
            timing=bad.timing,
        )
    )
    return out


def _dphi_power_formal(sp: Space, n: int, right: bool) -> Tuple[RingElem, RingElem]:
    """(dPhi * ... * dPhi, pointwise product), or the dbPhi mirror built from the right."""
    acc = RingElem.const(sp, 1)
    for _ in range(n):
        acc = rstar_dbarphi(1, acc) if right else lstar_dphi(1, acc)
    gen = dbarphi(sp, 1) if right else dphi(sp, 1)
    return acc, gen ** n if n else RingElem.const(sp, 1)


def _star_power_ratio(sp: Space, n: int) -> RationalH:
    """h^n / a_n: the factor the star power carries over the pointwise power."""
    return RationalH.h() ** n / norm_coeff(n, sp.s) if n else RationalH.coerce(1)


def _line_prefactor_checks(sp: Space, mmax: int) -> Report:
    """Squared prefactors of the four forms of M[m;n] agree with the direct normalization."""
    h = RationalH.h()
    s = sp.s
    w = None
    printed4 = []
    for m in range(mmax + 1):
        for n in range(mmax + 1):
            an, am = norm_coeff(n, s), norm_coeff(m, s)
            base = 1 / (am * an * factorial(m) * factorial(n))
            r_n, r_m = _star_power_ratio(sp, n), _star_power_ratio(sp, m)
            line2 = an / (h ** (2 * n) * factorial(m) * factorial(n) * am)
            line4 = am / (h ** (2 * m) * factorial(m) * factorial(n) * an)
            if line2 * r_n * r_n != base:
                w = {"form": "dPhi star power", "m": m, "n": n}
                break
            if line4 * r_m * r_m != base:
                w = {"form": "dbPhi star power", "m": m, "n": n}
                break
            # the alternative placement 1/h^n sqrt(a_n / (m! n! a_m)) on the dbPhi form
            if line2 * r_m * r_m == base:
                printed4.append([m, n])
        if w:
            break
    return _report(
        "vacuum-projection:prefactors",
        "formal",
        _sp_params(sp, max_size=mmax),
        w,
        {"dbPhi_form_exponent": "m", "exponent_n_also_valid_for": printed4},
    )


def _star_power_intermediate(sp: Space, nmax: int) -> Report:
    w = None
    for right in (False, True):
        for n in range(nmax + 1):
            star_pow, pointwise = _dphi_power_formal(sp, n, right)
            ratio = _star_power_ratio(sp, n)
            if star_pow != pointwise.scale(ratio):
                w = {"right": right, "n": n, "star": format_ring(star_pow)}
                break
        if w:
            break
    return _report("vacuum-projection:star-powers", "exact", _sp_params(sp, max_n=nmax), w, {"ratio": "h^n / a_n"})


def _projection_exact(L: int) -> List[Report]:
    sp = Space.cpn(1)
    vac = RingElem.B(sp, -L)
    h0 = Fraction(1, L)
    out = []
    z, zb = RingElem.z(sp, 1), RingElem.zbar(sp, 1)
    # vac * f = vac f(0, zbar) and f * vac = f(z, 0) vac on the spanning set of M_L
    w9 = w11 = None
    for a in range(L + 1):
        for b in range(L + 1):
            f = RingElem.monomial(sp, a=(a,), b=(b,), p=-L)
            lhs = star_exact_fock(vac, f, L)
            if w9 is None and lhs != vac * at_z_zero(f):
                w9 = {"a": a, "b": b, **_ring_diff(lhs, vac * at_z_zero(f))}
            rhs = star_exact_fock(f, vac, L)
            if w11 is None and rhs != at_zbar_zero(f) * vac:
                w11 = {"a": a, "b": b, **_ring_diff(rhs, at_zbar_zero(f) * vac)}
    out.append(_report("vacuum-projection:vac*f", "exact", {"space": "cpn", "N": 1, "L": L}, w9, {"spanning_set": (L + 1) ** 2}))
    out.append(_report("vacuum-projection:f*vac", "exact", {"space": "cpn", "N": 1, "L": L}, w11, {"spanning_set": (L + 1) ** 2}))
    idem = star_exact_fock(vac, vac, L)
    out.append(_report("vacuum-projection:idempotent", "exact", {"space": "cpn", "N": 1, "L": L}, _ring_diff(idem, vac), {"vac*vac": "vac"}))

    # the four forms of Mt[m;n], with the scalar prefactors divided out
    w = None
    for m in range(L + 1):
        for n in range(L + 1):
            Mt = RingElem.monomial(sp, a=(m,), b=(n,), p=-L)
            zm, zbn = z ** m, zb ** n
            dp_n, dp_pt = _dphi_power_formal(sp, n, right=False)
            db_m, db_pt = _dphi_power_formal(sp, m, right=True)
            forms = {
                "z^m * vac * (dPhi)^n": star_exact(zm, star_exact_fock(vac, dp_pt, L), L),
                "z^m * vac * dPhi*..*dPhi": star_exact(zm, star_exact_fock(vac, dp_n, L), L).scale(1 / eval_at(_star_power_ratio(sp, n), h0)),
                "(dbPhi)^m * vac * zb^n": star_exact_fock(db_pt, star_exact(vac, zbn, L), L),
                "dbPhi*..*dbPhi * vac * zb^n": star_exact_fock(db_m, star_exact(vac, zbn, L), L).scale(1 / eval_at(_star_power_ratio(sp, m), h0)),
            }
            for name, val in forms.items():
                if val != Mt:
                    w = {"m": m, "n": n, "form": name, **_ring_diff(val, Mt)}
                    break
            if w:
                break
        if w:
            break
    out.append(_report("vacuum-projection:four-forms", "exact", {"space": "cpn", "N": 1, "L": L}, w, {"labels": (L + 1) ** 2}))
    return out


def suite_vacuum_projection(cfg: SuiteConfig) -> List[Report]:
    Lmax = cfg.L or 3
    out = []
    sp = Space.cpn(1)
    out.append(_star_power_intermediate(sp, Lmax + 1))
    out.append(_line_prefactor_checks(sp, Lmax + 1))
    for L in range(1, Lmax + 1):
        out.extend(_projection_exact(L))
    return out


def suite_axioms(cfg: SuiteConfig) -> List[Report]:
    K = cfg.k(4)
    out = []
    for sp in cfg.space_list((1, 2)):
        t0 = time.perf_counter()
        b = basket(sp)
        hol = [RingElem.z(sp, 1), RingElem.z(sp, sp.N) ** 2 + RingElem.z(sp, 1).scale(3), RingElem.const(sp, Fraction(5, 2))]
        antihol = [x.conj() for x in hol]
        one = RingElem.const(sp, 1)
        w = {}
        for fi, f in enumerate(b):
            for gi, g in enumerate(b):
                fg = star_trunc(f, g, K)
                gf = star_trunc(g, f, K)
                tag = {"f": BASKET_SOURCES[fi], "g": BASKET_SOURCES[gi]}
                if "C0" not in w and fg[0] != f * g:
                    w["C0"] = {**tag, **_ring_diff(fg[0], f * g)}
                anti = fg[1] - gf[1]
                if "C1" not in w and anti != poisson_antisym(f, g):
                    w["C1"] = {**tag, **_ring_diff(anti, poisson_antisym(f, g))}
            for a in hol:
                if "hol" not in w and star_trunc(a, f, K) != HSeries.of(a * f, K):
                    w["hol"] = {"a": format_ring(a), "f": BASKET_SOURCES[fi]}
            for c in antihol:
                if "antihol" not in w and star_trunc(f, c, K) != HSeries.of(f * c, K):
                    w["antihol"] = {"b": format_ring(c), "f": BASKET_SOURCES[fi]}
            if "unit" not in w and not (star_trunc(f, one, K) == HSeries.of(f, K) == star_trunc(one, f, K)):
                w["unit"] = {"f": BASKET_SOURCES[fi]}
        dt = time.perf_counter() - t0
        for name in ("C0", "C1", "hol", "antihol", "unit"):
            out.append(_report(f"axioms:{name}", "trunc", _sp_params(sp, K=K), w.get(name), {"basket": len(b)}, dt if name == "C0" else None))
    return out


def suite_cp1_appendix(cfg: SuiteConfig) -> List[Report]:
    K = cfg.k(6)
    Lmax = cfg.L or 4
    sp = Space.cpn(1)
    z, zb = RingElem.z(sp, 1), RingElem.zbar(sp, 1)
    h = RationalH.h()
    b = basket(sp)
    out = []
    p = _sp_params(sp, K=K)

    w = None
    for fi, g in enumerate(b):
        d = _series_diff(lstar_zbar_trunc(1, g, K), star_covariant(zb, g, K))
        if d:
            w = {"g": BASKET_SOURCES[fi], **d}
            break
    out.append(_report("cp1:A12 left zb operator", "trunc", p, w, {"basket": len(b)}))
    w = None
    for fi, f in enumerate(b):
        d = _series_diff(rstar_z_trunc(1, f, K), star_covariant(f, z, K))
        if d:
            w = {"f": BASKET_SOURCES[fi], **d}
            break
    out.append(_report("cp1:A13 right z operator", "trunc", p, w, {"basket": len(b)}))
    for tag, (f, g) in {"A14 z*z": (z, z), "A15 z*zb": (z, zb), "A16 zb*zb": (zb, zb)}.items():
        out.append(_report(f"cp1:{tag}", "trunc", p, _series_diff(star_trunc(f, g, K), HSeries.of(f * g, K)), {"pointwise": True}))
    out.append(_report("cp1:A17 zb*z", "trunc", p, _series_diff(star_trunc(zb, z, K), cp1_single_form(K)), {"through_order": K}))

    one_h = RingElem.const(sp, h)
    ccr1 = lstar_dphi(1, z) - z * dphi(sp, 1)
    ccr2 = rstar_dbarphi(1, zb) - dbarphi(sp, 1) * zb
    out.append(_report("cp1:A18 [dPhi, z]", "exact", _sp_params(sp), _ring_diff(ccr1, one_h), {"value": "h"}))
    out.append(_report("cp1:A19 [zb, dbPhi]", "exact", _sp_params(sp), _ring_diff(ccr2, one_h), {"value": "h"}))
    for L in range(1, Lmax + 1):
        out.append(_commutator_matrix(1, L))

    out.extend(_vacuum_exact(sp))
    for L in range(1, Lmax + 1):
        vL = RingElem.B(sp, -L)
        w = None
        for name, val in (
            ("dPhi*vac", star_exact_fock(dphi(sp, 1), vL, L)),
            ("vac*dbPhi", star_exact_fock(vL, dbarphi(sp, 1), L)),
        ):
            if val:
                w = {"product": name, "value": format_ring(val)}
        out.append(_report("cp1:A20 annihilation", "exact", {"space": "cpn", "N": 1, "L": L}, w, {"products": 2}))
        out.append(_report("cp1:A21 idempotent", "exact", {"space": "cpn", "N": 1, "L": L}, _ring_diff(star_exact_fock(vL, vL, L), vL), {"vac*vac": "vac"}))
    for L in range(1, Lmax + 1):
        r = _normalized_fock_check(L)
        r.check = "cp1:A23 matrix units"
        out.append(r)
    return out


def suite_ch_mirror(cfg: SuiteConfig) -> List[Report]:
    K = cfg.k(6)
    out = []
    dims = cfg.dims or (1, 2)
    for N in dims:
        sp = Space.chn(N)
        p = _sp_params(sp, K=K)
        w = None
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                zi, zj, zbi, zbj = RingElem.z(sp, i), RingElem.z(sp, j), RingElem.zbar(sp, i), RingElem.zbar(sp, j)
                for name, (f, g) in {"z*z": (zi, zj), "z*zb": (zi, zbj), "zb*zb": (zbi, zbj)}.items():
                    d = _series_diff(star_trunc(f, g, K), HSeries.of(f * g, K))
                    if d:
                        w = {"product": name, "i": i, "j": j, **d}
        out.append(_report("ch:trivial-products", "trunc", p, w, {"pairs": N * N}))
        w = None
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                d = _series_diff(star_trunc(RingElem.zbar(sp, i), RingElem.z(sp, j), K), closed_form_product(sp, i, j, K))
                if d:
                    w = {"i": i, "j": j, **d}
        out.append(_report("ch:closed-form", "trunc", p, w, {"pairs": N * N}))
        out.append(_report("ch:left-right", "trunc", p, _series_diff(star_trunc(RingElem.zbar(sp, 1), RingElem.z(sp, N), K), star_trunc_right(RingElem.zbar(sp, 1), RingElem.z(sp, N), K)), {"R_g": "conjugate"}))
        out.extend(_vacuum_exact(sp))
        out.append(verify_karabegov(sp, 1, K, basket(sp)))
        out.append(_star_power_intermediate(sp, 4))
        out.append(_line_prefactor_checks(sp, 4))
    w = None
    for m in range(1, 9):
        if ladder_coefficient(m, -1) != (-1) ** (m - 1) * beta(m):
            w = {"m": m}
    out.append(_report("ch:ladder-coefficients", "formal", {"m_max": 8}, w, {"lambda_m": "(-1)^(m-1) beta_m"}))
    sub = SuiteConfig(spaces=("chn",), dims=cfg.dims, order=4)
    out.extend(suite_ladder(sub))
    return out


SUITES: Dict[str, Callable[[SuiteConfig], List[Report]]] = {
    "stirling": suite_stirling,
    "karabegov": suite_karabegov,
    "associativity": suite_associativity,
    "hyp-closed-form": suite_hyp_closed_form,
    "bordemann": suite_bordemann,
    "covariant-equivalence": suite_covariant_equivalence,
    "fock-matrix-units": suite_fock_matrix_units,
    "ladder": suite_ladder,
    "vacuum-numeric": suite_vacuum_numeric,
    "vacuum-projection": suite_vacuum_projection,
    "axioms": suite_axioms,
    "cp1-appendix": suite_cp1_appendix,
    "ch-mirror": suite_ch_mirror,
}


class UnknownSuiteError(KeyError):
    pass


def run_suite(name: str, cfg: SuiteConfig = SuiteConfig()) -> List[Report]:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(run_suite(key, cfg))
        return out
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuiteError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))} or all") from None
    return fn(cfg)


__all__ = ["SuiteConfig", "SUITES", "run_suite", "basket", "random_polynomial", "BASKET_SOURCES", "UnknownSuiteError"]
