"""Finite matrices of z, zb and their commutator at h = 1/L on CP^1 (or CP^N)."""
import argparse

from kahlerstar.fock import Generator, fock_states, mat_mul, mat_sub, matrix_rep

ap = argparse.ArgumentParser()
ap.add_argument("--L", type=int, default=3)
ap.add_argument("--dim", type=int, default=1)
args = ap.parse_args()


def show(name, mat):
    print(name)
    width = max(len(str(x)) for row in mat for x in row)
    for row in mat:
        print("  [" + " ".join(f"{str(x):>{width}}" for x in row) + "]")


reps = matrix_rep(args.L, args.dim)
print("basis:", ["M[" + ",".join(map(str, I)) + ";]" for I in fock_states(args.dim, args.L)])
for k in range(1, args.dim + 1):
    z, zb = reps[Generator("z", k)], reps[Generator("zb", k)]
    show(f"z[{k}]", z)
    show(f"zb[{k}]", zb)
    show(f"[z[{k}], zb[{k}]]", mat_sub(mat_mul(z, zb), mat_mul(zb, z)))
