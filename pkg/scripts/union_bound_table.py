"""Tabulate the log of the small-set density union bound over a range of set sizes."""

import argparse
import math

from bipcycles.expansion import density_edge_threshold, eval_density_union_bound


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=400)
    ap.add_argument("--c", type=float, default=8.0, help="p = c n^(-2/3)")
    ap.add_argument("--eps-prime", type=float, default=0.3)
    ap.add_argument("--a-max", type=int, default=None, help="default eps' n / 15")
    args = ap.parse_args()

    p = args.c * args.n ** (-2 / 3)
    a_max = args.a_max or math.floor(args.eps_prime * args.n / 15)
    print(f"n={args.n} p={p:.5f} eps'={args.eps_prime}")
    print(f"{'a':>4} {'k':>5} {'log bound':>12} {'bound':>12}")
    for a in range(2, a_max + 1):
        k = density_edge_threshold(a, args.eps_prime, args.n, p)
        lb = eval_density_union_bound(args.n, a, args.eps_prime, p)
        bound = math.exp(lb) if lb < 700 else math.inf
        print(f"{a:>4} {k:>5} {lb:>12.3f} {bound:>12.4g}")


if __name__ == "__main__":
    main()
