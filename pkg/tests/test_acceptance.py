"""Acceptance criteria 1-13, one recorded pass/fail line each.

Tolerances and sizes are pinned here rather than taken from suite defaults,
so a change of default cannot silently weaken a criterion.
"""
import subprocess
import sys
import time

from kahlerstar import cli
from kahlerstar.report import FAIL, Report
from kahlerstar.ring import Space
from kahlerstar.suites import SUITES, SuiteConfig, basket, run_suite

from conftest import record_acceptance

BOTH = ("cpn", "chn")
RESIDUAL_TOL = 1e-10
CONTROL_FLOOR = 1e-4
H0 = 0.05
TERM_CAP = 40
N_POINTS = 5


def _check(number, title, reports, extra_ok=True, detail=""):
    bad = [r for r in reports if not r.passed]
    ok = bool(reports) and not bad and extra_ok
    if bad:
        detail = f"{bad[0].check}: {bad[0].witness}"
    record_acceptance(number, ok, title, detail or f"{len(reports)} checks")
    assert ok, detail


def test_criterion_01_stirling():
    reports = run_suite("stirling", SuiteConfig(order=12))
    _check(1, "alpha(m) series coefficients equal S(n-1, m-1), 2 <= m <= n <= 12", reports)


def test_criterion_02_karabegov():
    assert all(len(basket(Space(N, s))) == 8 for N in (1, 2) for s in (1, -1))
    reports = run_suite("karabegov", SuiteConfig(spaces=BOTH, dims=(1, 2), order=6))
    main = [r for r in reports if r.check == "karabegov"]
    covered = {(r.params["space"], r.params["N"]) for r in main}
    _check(2, "Karabegov commutator vanishes through h^6 on the 8-element basket", reports, covered == {(s, N) for s in BOTH for N in (1, 2)})


def test_criterion_03_associativity():
    t0 = time.perf_counter()
    reports = run_suite("associativity", SuiteConfig(spaces=BOTH, dims=(2,), order=4, count=20, seed=7))
    elapsed = time.perf_counter() - t0
    _check(3, "(f*g)*h = f*(g*h) through h^4, 20 seeded triples, N=2", reports, elapsed <= 300, f"{elapsed:.1f}s")


def test_criterion_04_closed_form():
    reports = run_suite("hyp-closed-form", SuiteConfig(spaces=("cpn",), dims=(2,), order=6))
    _check(4, "zb^i * z^j equals the hypergeometric closed form through h^6, N=2", reports)


def test_criterion_05_bordemann():
    reports = run_suite("bordemann", SuiteConfig(dims=(2,), order=6))
    _check(5, "F1, F2 equal their 2F1 forms and reassemble the closed form through h^6", reports)


def test_criterion_06_covariant():
    reports = run_suite("covariant-equivalence", SuiteConfig(spaces=BOTH, dims=(1, 2), order=5))
    _check(6, "covariant-form product equals the operator-series product through h^5", reports)


def test_criterion_07_exact_fock():
    reports = run_suite("fock-matrix-units", SuiteConfig())
    wanted = {("fock:matrix-units", 1, 3), ("fock:structure-constants", 2, 2)}
    seen = {(r.check, r.params.get("N"), r.params.get("L")) for r in reports}
    _check(7, "exact Fock products: matrix units at N=1, L=3; structure constants at N=2, L=2", reports, wanted <= seen)


def test_criterion_08_ladder():
    reports = run_suite("ladder", SuiteConfig(spaces=BOTH, dims=(1, 2), order=4))
    sq = [r for r in reports if r.check == "ladder:squared-coefficients"]
    _check(8, "printed ladder squares equal derived squares, m, n <= 4, N <= 2", reports, len(sq) == 4 and all(r.params["max_m"] == 4 for r in sq))


def test_criterion_09_vacuum():
    reports = run_suite("vacuum-numeric", SuiteConfig(spaces=BOTH, dims=(1,), h0=H0, terms=TERM_CAP))
    numeric = [r for r in reports if r.check in ("vacuum-numeric:zb-vac", "vacuum-numeric:vac-z")]
    pinned = all(
        r.params["M"] == TERM_CAP and r.params["h0"] == H0 and r.params["points"] == N_POINTS and float(r.witness["max_residual"]) < RESIDUAL_TOL
        for r in numeric
    )
    control = [r for r in reports if r.check == "vacuum-numeric:negative-control"]
    control_ok = all(float(r.witness["max_residual"]) > CONTROL_FLOOR for r in control)
    exact = [r for r in reports if r.mode == "exact"]
    worst = max(float(r.witness["max_residual"]) for r in numeric)
    _check(
        9,
        "vacuum annihilation exact; zb*vac and vac*z residual < 1e-10 at 5 points, M=40, h0=0.05",
        reports,
        pinned and control_ok and len(numeric) == 4 and len(exact) >= 8,
        f"max residual {worst:.3g}",
    )


def test_criterion_10_vacuum_projection():
    reports = run_suite("vacuum-projection", SuiteConfig(L=3))
    Ls = {r.params.get("L") for r in reports if r.mode == "exact" and "L" in r.params}
    _check(10, "vacuum projection and the four forms of M agree exactly at N=1, L <= 3", reports, Ls == {1, 2, 3})


def test_criterion_11_axioms():
    reports = run_suite("axioms", SuiteConfig(spaces=BOTH, dims=(1, 2), order=4))
    _check(11, "C0 = fg, antisymmetric C1, separation of variables, unit", reports)


def test_criterion_12_cp1_appendix():
    reports = run_suite("cp1-appendix", SuiteConfig(order=6, L=4))
    a23 = {r.params["L"] for r in reports if r.check == "cp1:A23 matrix units"}
    _check(12, "CP^1 appendix identities (operator series, products, vacuum, matrix units L <= 4)", reports, a23 == {1, 2, 3, 4})


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "kahlerstar", *args], capture_output=True)


def test_criterion_13_cli_determinism(monkeypatch, capsys):
    args = ("verify", "--suite", "associativity", "--dim", "2", "--order", "3", "--seed", "7", "--count", "4", "--quiet")
    first, second = _cli(*args), _cli(*args)
    other = _cli(*args[:-5], "--seed", "8", "--count", "4", "--quiet")
    numeric = [_cli("verify", "--suite", "vacuum-numeric", "--space", "chn", "--quiet") for _ in range(2)]
    same = first.stdout == second.stdout and numeric[0].stdout == numeric[1].stdout
    codes_ok = first.returncode == 0 and numeric[0].returncode == 0 and other.returncode == 0
    seed_matters = other.stdout != first.stdout
    unknown = _cli("verify", "--suite", "no-such-suite")

    def broken(cfg):
        return [Report("injected", "exact", {}, status=FAIL, witness={"reason": "forced"})]

    monkeypatch.setitem(SUITES, "bordemann", broken)
    fail_code = cli.main(["verify", "--suite", "bordemann", "--quiet"])
    capsys.readouterr()
    ok = same and codes_ok and seed_matters and unknown.returncode == 2 and fail_code == 1
    record_acceptance(
        13,
        ok,
        "verify output byte-identical across runs; exit codes 0 / 1 / 2",
        f"identical={same} seed_sensitive={seed_matters} exit(pass,fail,unknown)=({first.returncode},{fail_code},{unknown.returncode})",
    )
    assert ok


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-q", "-s"]))
