"""Which power of h makes the dbPhi star-power form of M[m;n] normalized.

Compares the squared prefactor (1/h^(2e)) a_e' / (m! n! a_e) for e = m and e = n
against the direct normalization 1 / (m! n! a_m a_n), after the star power
contributes (h^m / a_m)^2.
"""
import argparse
from math import factorial

from kahlerstar.fock import norm_coeff
from kahlerstar.scalars import RationalH

ap = argparse.ArgumentParser()
ap.add_argument("--max", type=int, default=4)
args = ap.parse_args()

h = RationalH.h()
for name, s in (("cpn", 1), ("chn", -1)):
    print(f"== {name}")
    for m in range(args.max + 1):
        for n in range(args.max + 1):
            am, an = norm_coeff(m, s), norm_coeff(n, s)
            target = 1 / (am * an * factorial(m) * factorial(n))
            power = (h ** m / am) ** 2 if m else RationalH.coerce(1)
            exp_m = am / (h ** (2 * m) * factorial(m) * factorial(n) * an) * power == target
            exp_n = an / (h ** (2 * n) * factorial(m) * factorial(n) * am) * power == target
            print(f"  m={m} n={n}  exponent m: {'ok' if exp_m else 'no'}   exponent n: {'ok' if exp_n else 'no'}")
