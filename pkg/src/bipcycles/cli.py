"""Command-line entry point: ``bipcycles <command> ...``.

Exit codes: 0 success, 2 expansion witness, 3 cycle misses, 64 usage error.
The default seed may come from ``BIPCYCLES_SEED``; ``--seed`` wins.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .cycle_pipeline import PipelineConfig, find_all_even_cycles
from .expansion import check_expansion_exact, check_expansion_sampled
from .graph_core import GraphError, read_edge_list, write_edge_list
from .harness import GridCell, Strategy, brute_force_cycle_oracle, run_experiment
from .posa import ExpansionWitness
from .random_model import ModelParams, sample_gnnp

EXIT_OK = 0
EXIT_WITNESS = 2
EXIT_MISSES = 3
EXIT_USAGE = 64

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _default_seed() -> int:
    raw = os.environ.get("BIPCYCLES_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"BIPCYCLES_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="64-bit seed (env BIPCYCLES_SEED)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--quiet", "-q", action="store_true")

    parser = _Parser(prog="bipcycles", description="Even cycles in random bipartite graphs.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    gen = sub.add_parser("gen", parents=[common], help="sample G(n, n, p) to an edge list")
    gen.add_argument("--n", type=int, required=True)
    prob = gen.add_mutually_exclusive_group(required=True)
    prob.add_argument("--p", type=float)
    prob.add_argument("--c", type=float, help="p = c * n^(-2/3)")
    gen.add_argument("--out", required=True)

    cyc = sub.add_parser("cycles", parents=[common], help="find every even cycle length in range")
    cyc.add_argument("--in", dest="infile", required=True)
    cyc.add_argument("--eps", type=float, required=True)
    cyc.add_argument("--t-max", type=int, default=None)
    cyc.add_argument("--p", type=float, default=None, help="edge probability (default m / n^2)")
    cyc.add_argument("--core-degree", type=int, default=None)

    exp = sub.add_parser("expand", parents=[common], help="check |N(X)\\X| >= 2|X| for small X")
    exp.add_argument("--in", dest="infile", required=True)
    exp.add_argument("--limit", type=int, required=True)
    exp.add_argument("--trials", type=int, default=1000)
    exp.add_argument("--exact", action="store_true")

    res = sub.add_parser("resilience", parents=[common], help="Monte Carlo adversarial thinning")
    res.add_argument("--n", type=int, required=True)
    res.add_argument("--c", type=float, required=True)
    res.add_argument("--eps", type=float, required=True)
    res.add_argument("--strategy", choices=[s.value for s in Strategy], default="RandomDelete")
    res.add_argument("--trials", type=int, default=20)
    res.add_argument("--csv", required=True)
    res.add_argument("--edges-after", type=int, default=None)
    res.add_argument("--t-max", type=int, default=None)
    res.add_argument("--core-degree", type=int, default=None)
    res.add_argument("--workers", type=int, default=1)
    res.add_argument("--timing", action="store_true", help="record runtime_ms (breaks byte-identity)")

    orc = sub.add_parser("oracle", parents=[common], help="brute-force cycle lengths (n <= 6)")
    orc.add_argument("--in", dest="infile", required=True)
    return parser


def _emit(args, text: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    elif not args.quiet:
        print(text)


def cmd_gen(args) -> int:
    seed = args.seed
    if args.c is not None:
        params = ModelParams.from_C(args.n, args.c, seed)
    else:
        params = ModelParams(args.n, args.p, seed)
    g = sample_gnnp(params)
    write_edge_list(g, args.out)
    _emit(args, f"wrote n={g.n} m={g.m} p={params.p!r} seed={seed} to {args.out}",
          {"n": g.n, "m": g.m, "p": params.p, "seed": seed, "out": args.out})
    return EXIT_OK


def _fmt_cycle(c) -> list[str]:
    return [repr(v) for v in c.vertices]


def cmd_cycles(args) -> int:
    g = read_edge_list(args.infile)
    p = args.p if args.p is not None else g.m / (g.n * g.n)
    config = PipelineConfig(eps=args.eps, t_max_override=args.t_max, core_degree=args.core_degree)
    cat = find_all_even_cycles(g, config, ModelParams(g.n, min(p, 1.0), args.seed))
    lines = [f"t range {cat.t_range[0]}..{cat.t_range[1]}"]
    lines += [f"note: {s}" for s in cat.notices]
    miss = dict(cat.misses)
    for t in cat.wanted:
        if t in cat.cycles:
            lines.append(f"t={t} found case {cat.cases[t]}: {' '.join(_fmt_cycle(cat.cycles[t]))}")
        else:
            lines.append(f"t={t} miss: {miss.get(t, 'not found')}")
    payload = {
        "t_range": list(cat.t_range),
        "notices": cat.notices,
        "found": {str(t): _fmt_cycle(c) for t, c in sorted(cat.cycles.items())},
        "misses": [[t, r] for t, r in cat.misses],
    }
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK if cat.complete else EXIT_MISSES


def cmd_expand(args) -> int:
    g = read_edge_list(args.infile)
    if args.exact:
        res = check_expansion_exact(g, args.limit)
    else:
        res = check_expansion_sampled(g, args.limit, args.trials, args.seed)
    if isinstance(res, ExpansionWitness):
        xs = sorted(res.x)
        text = (f"witness: |X|={len(xs)} |N(X)\\X|={res.neighborhood_size} < {2 * len(xs)}\n"
                f"X = {' '.join(map(repr, xs))}")
        _emit(args, text, {"result": "witness", "x": [repr(v) for v in xs],
                           "neighborhood_size": res.neighborhood_size})
        return EXIT_WITNESS
    label = "exact" if res.method == "exact" else "sampled (not a proof)"
    _emit(args, f"ok: {res.checked} sets checked, {label}",
          {"result": "ok", "method": res.method, "checked": res.checked})
    return EXIT_OK


def cmd_resilience(args) -> int:
    cell = GridCell(
        n=args.n, eps=args.eps, strategy=args.strategy, trials=args.trials, C=args.c,
        edges_after=args.edges_after, t_max_override=args.t_max, core_degree=args.core_degree,
    )
    report = run_experiment([cell], args.seed, workers=args.workers, timing=args.timing)
    report.write_csv(args.csv)
    ok = report.miss_free()
    _emit(args, f"{ok}/{len(report.rows)} trials miss-free; CSV written to {args.csv}",
          {"trials": len(report.rows), "miss_free": ok, "csv": args.csv})
    return EXIT_OK if ok == len(report.rows) else EXIT_MISSES


def cmd_oracle(args) -> int:
    g = read_edge_list(args.infile)
    lengths = sorted(brute_force_cycle_oracle(g))
    _emit(args, "{" + ", ".join(map(str, lengths)) + "}", {"lengths": lengths})
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "cycles": cmd_cycles,
    "expand": cmd_expand,
    "resilience": cmd_resilience,
    "oracle": cmd_oracle,
}


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        if args.seed is None:
            args.seed = _default_seed()
        logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"bipcycles: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, ValueError, OSError) as exc:
        print(f"bipcycles: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
