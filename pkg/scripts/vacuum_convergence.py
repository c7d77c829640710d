"""Partial-sum residuals of the vacuum annihilation series, point by point."""
import argparse

from kahlerstar.oracles import default_points, partial_sum_residuals
from kahlerstar.ring import Space

ap = argparse.ArgumentParser()
ap.add_argument("--space", choices=("cpn", "chn"), default="cpn")
ap.add_argument("--dim", type=int, default=1)
ap.add_argument("--identity", choices=("zb-vac", "vac-z"), default="zb-vac")
ap.add_argument("--h0", default="0.05")
ap.add_argument("--terms", type=int, default=40)
ap.add_argument("--every", type=int, default=5)
args = ap.parse_args()

sp = Space.from_name(args.space, args.dim)
pts = default_points(sp)
hist = partial_sum_residuals(args.identity, sp, pts, args.h0, args.terms)
print(f"# {args.identity} on {sp.name} N={sp.N}, h0={args.h0}")
print("terms " + " ".join(f"pt{i:<9}" for i in range(len(pts))))
for m in range(args.every - 1, args.terms, args.every):
    print(f"{m + 1:>5} " + " ".join(f"{h[m]:<11.3e}" for h in hist))
