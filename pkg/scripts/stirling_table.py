"""Print a(n, m) beside S(n-1, m-1) and the h-series of alpha(m)."""
import argparse

from kahlerstar.combinatorics import alpha, coeff_a, stirling2
from kahlerstar.scalars import expand_series

ap = argparse.ArgumentParser()
ap.add_argument("--nmax", type=int, default=10)
args = ap.parse_args()

print(f"{'n':>3} {'m':>3} {'a(n,m)':>10} {'S(n-1,m-1)':>12}")
bad = 0
for n in range(2, args.nmax + 1):
    for m in range(2, n + 1):
        a, s = coeff_a(n, m), stirling2(n - 1, m - 1)
        bad += a != s
        print(f"{n:>3} {m:>3} {a:>10} {s:>12}{'' if a == s else '  MISMATCH'}")

print()
for m in range(2, 6):
    ser = expand_series(alpha(m), args.nmax)
    print(f"alpha({m}) = {alpha(m)}")
    print("   series:", [str(c) for c in ser.coeffs])
raise SystemExit(1 if bad else 0)
