"""Measure the root/bridge construction against its required bounds.

For each seed: the heavy sets, the root's heavy neighbours, the bridge
density e(N(v0), B) next to the required eps (1+eps/2) (np)^3 / 8, and the
size of the d-core of G'[B + N(v0)] for a range of d.
"""

import argparse
import math

from bipcycles.cycle_pipeline import build_bridge_set, heavy_vertices, select_root
from bipcycles.degeneracy import prune_to_min_degree
from bipcycles.random_model import ModelParams, sample_gnnp


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=900)
    ap.add_argument("--c", type=float, default=8.0)
    ap.add_argument("--eps", type=float, default=0.4)
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--d", type=int, nargs="*", default=[4, 6, 8, 10, 12, 16, 20, 24])
    args = ap.parse_args()

    for seed in range(args.seeds):
        params = ModelParams.from_C(args.n, args.c, seed)
        g = sample_gnnp(params)
        np_ = args.n * params.p
        heavy = heavy_vertices(g, params, args.eps)
        v0 = select_root(g, heavy, args.eps)
        sel = build_bridge_set(g, v0, heavy, args.eps, core_degree=1, strict=False)
        need = args.eps * (1 + args.eps / 2) * np_**3 / 8
        d_default = math.ceil((1 + args.eps / 2) * np_ / 4)
        union = sel.bridge_b | frozenset(g.neighbors(v0))
        cores = {d: len(prune_to_min_degree(g, union, d)) for d in args.d}
        print(f"seed {seed}: m={g.m} np={np_:.1f} |B0|={len(heavy.b0)} |B1|={len(heavy.b1)} v0={v0!r}")
        print(f"  heavy neighbours {sel.stats.heavy_neighbors}, |B|={len(sel.bridge_b)}, "
              f"|B+N(v0)|={sel.stats.union_size}")
        print(f"  e(N(v0),B)={sel.stats.bridge_edges} vs required {need:.0f} "
              f"(ratio {sel.stats.bridge_edges / need:.3f})")
        print(f"  core sizes (default d={d_default}): "
              + ", ".join(f"d={d}: {s}" for d, s in cores.items()))


if __name__ == "__main__":
    main()
