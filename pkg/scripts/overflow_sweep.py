#!/usr/bin/env python3
"""Sweep the overflow invariant over a family of domains and maps, comparing
the divisor+pushforward route against the energy route, and emit a CSV."""

import argparse
import sys
import time

from arithcap.analytic import PolyMap
from arithcap.curves import circle_domain, conformal_image_domain, perturbed_circle_domain
from arithcap.greens import solve_green
from arithcap.overflow import overflow

DOMAINS = {
    "disk0.8": lambda: circle_domain(0.8),
    "disk1.5": lambda: circle_domain(1.5),
    "pert5pct": lambda: perturbed_circle_domain(1.0, 0.05, 3),
    "conformal": lambda: conformal_image_domain([0, 1.3, 0.2]),
}

MAPS = {
    "z": PolyMap([0, 1]),
    "z^2": PolyMap([0, 0, 1]),
    "z(z-0.5)": PolyMap([0, -0.5, 1]),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--resolution", type=int, default=256)
    ap.add_argument("--n-quad", type=int, default=2048)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    rows = ["domain,map,ex_def,ex_energy,abs_difference,seconds"]
    for dname, make in DOMAINS.items():
        sol = solve_green(make(), args.resolution)
        for mname, f in MAPS.items():
            t0 = time.time()
            d = overflow(sol, f, "def", n_quad=args.n_quad)
            e = overflow(sol, f, "energy", n_quad=args.n_quad)
            rows.append(f"{dname},{mname},{d!r},{e!r},{abs(d - e)!r},{time.time() - t0:.2f}")
            print(rows[-1])
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(rows) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
