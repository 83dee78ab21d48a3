#!/usr/bin/env python3
"""Generate a sample of the continuum family sum a_n / q(phi)^n for a monic
integer p, check distinctness and the geometric tail bound on a small disk."""

import argparse

import numpy as np

from arithcap.analytic import PolyMap
from arithcap.curves import circle_domain
from arithcap.family import SeedSequence, distinctness_check, family_member, tail_bound_check
from arithcap.parsing import parse_polynomial, poly_to_string


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", default="X - 2")
    ap.add_argument("--order", type=int, default=None)
    ap.add_argument("--count", type=int, default=16)
    ap.add_argument("--bound", type=int, default=1)
    ap.add_argument("--disk-radius", type=float, default=0.3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    p = parse_polynomial(args.p).to_int_poly()
    m = p.degree
    order = args.order or 16 * m
    rng = np.random.default_rng(args.seed)
    length = max(order // m, 1)
    seeds = [
        SeedSequence(rng.integers(-args.bound, args.bound + 1, length).tolist(), args.bound)
        for _ in range(args.count)
    ]

    print(f"p = {poly_to_string(p.to_rat())},  truncation order {order}")
    report = distinctness_check(p, seeds, order)
    print(f"{args.count} random seeds pairwise distinct: {report.distinct}")
    for s in seeds[:4]:
        g = family_member(p, s, order)
        head = ", ".join(str(c) for c in g.coeffs[: min(8, order + 1)])
        print(f"  seed {list(s.values)[:6]}... -> [{head}, ...]")

    dom = circle_domain(args.disk_radius)
    tb = tail_bound_check(p, PolyMap([0, 1]), dom)
    print(
        f"tail bound on the radius-{args.disk_radius} disk: delta = {tb.delta:.4f} "
        f"(geometric convergence: {tb.geometric_ok})"
    )


if __name__ == "__main__":
    main()
