"""Seeded Monte Carlo resilience experiments and a brute-force cycle oracle.

Per-trial seeds: trial ``k`` of grid cell ``c`` samples its graph with
``split_seed(master_seed, c, k)`` and drives its adversary with
``split_seed(graph_seed, 1)``.  Rows are sorted by ``(cell, trial)`` before
writing, so the CSV does not depend on worker scheduling.
"""

from __future__ import annotations

import csv
import enum
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .cycle_pipeline import PipelineConfig, find_all_even_cycles
from .graph_core import BipartiteGraph, Side, Vertex, delete_edges
from .random_model import ModelParams, make_rng, sample_gnnp, split_seed

CSV_COLUMNS = (
    "seed",
    "n",
    "p",
    "eps",
    "strategy",
    "edges_after",
    "t_range",
    "misses",
    "runtime_ms",
)

ORACLE_MAX_N = 6


class Strategy(str, enum.Enum):
    RANDOM_DELETE = "RandomDelete"
    STAR_KILL = "StarKill"
    SHORT_CYCLE_BREAKER = "ShortCycleBreaker"


@dataclass(frozen=True)
class AdversaryStrategy:
    kind: Strategy
    budget: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Strategy(self.kind))
        if self.budget < 0:
            raise ValueError(f"budget must be >= 0, got {self.budget}")


def adversary_delete(g: BipartiteGraph, strategy: AdversaryStrategy, seed: int) -> BipartiteGraph:
    budget = strategy.budget
    if budget > g.m:
        raise ValueError(f"budget {budget} exceeds edge count {g.m}")
    if budget == 0:
        return g
    rng = make_rng(seed)
    if strategy.kind is Strategy.RANDOM_DELETE:
        return delete_edges(g, _random_edges(g.sorted_edges(), budget, rng))
    if strategy.kind is Strategy.STAR_KILL:
        return delete_edges(g, _star_kill(g, budget))
    return delete_edges(g, _short_cycle_breaker(g, budget, rng))


def _random_edges(edges: list[tuple[int, int]], k: int, rng) -> list[tuple[int, int]]:
    idx = rng.choice(len(edges), size=k, replace=False)
    return [edges[i] for i in sorted(idx.tolist())]


def _star_kill(g: BipartiteGraph, budget: int) -> list[tuple[int, int]]:
    """Strip every edge at a current maximum-degree vertex (lowest (side, index)
    on ties); the last star may be partial, cut in ascending neighbour order."""
    n = g.n
    adj_l = [set(x.index for x in g.neighbors(Vertex(Side.LEFT, u))) for u in range(n)]
    adj_r = [set(x.index for x in g.neighbors(Vertex(Side.RIGHT, v))) for v in range(n)]
    removed: list[tuple[int, int]] = []
    while len(removed) < budget:
        best = max(
            ((len(a), -s, -i) for s, side in enumerate((adj_l, adj_r)) for i, a in enumerate(side)),
        )
        _, s, i = best
        s, i = -s, -i
        own, other = (adj_l, adj_r) if s == 0 else (adj_r, adj_l)
        for j in sorted(own[i]):
            if len(removed) == budget:
                break
            own[i].discard(j)
            other[j].discard(i)
            removed.append((i, j) if s == 0 else (j, i))
    return removed


def _short_cycle_breaker(g: BipartiteGraph, budget: int, rng) -> list[tuple[int, int]]:
    """Delete one random edge of a 4-cycle, repeatedly; once no 4-cycle is
    left, fill the rest of the budget with uniformly random edges."""
    n = g.n
    adj_l = [0] * n  # bitmask over Right indices
    adj_r = [0] * n  # bitmask over Left indices
    for u, v in g.edges:
        adj_l[u] |= 1 << v
        adj_r[v] |= 1 << u
    live = g.sorted_edges()
    pos = {e: i for i, e in enumerate(live)}
    removed: list[tuple[int, int]] = []
    c4_free: set[tuple[int, int]] = set()

    def drop(e: tuple[int, int]) -> None:
        u, v = e
        adj_l[u] &= ~(1 << v)
        adj_r[v] &= ~(1 << u)
        i = pos.pop(e)
        last = live.pop()
        if i < len(live):
            live[i] = last
            pos[last] = i
        c4_free.discard(e)
        removed.append(e)

    while len(removed) < budget and len(c4_free) < len(live):
        u, v = live[int(rng.integers(len(live)))]
        if (u, v) in c4_free:
            continue
        cyc = None
        others = adj_r[v] & ~(1 << u)
        while others and cyc is None:
            low = others & -others
            w = low.bit_length() - 1
            common = adj_l[u] & adj_l[w] & ~(1 << v)
            if common:
                x = (common & -common).bit_length() - 1
                cyc = [(u, v), (w, v), (w, x), (u, x)]
            others ^= low
        if cyc is None:
            c4_free.add((u, v))
            continue
        drop(cyc[int(rng.integers(4))])
    rest = budget - len(removed)
    if rest:
        for e in _random_edges(sorted(live), rest, rng):
            removed.append(e)
    return removed


# -- brute-force oracle ----------------------------------------------------


def _simple_cycles(g: BipartiteGraph) -> Iterator[tuple[Vertex, ...]]:
    """Every simple cycle exactly once: it starts at its lowest vertex and
    its second vertex is lower than its last."""
    verts = g.vertices()
    order = {v: i for i, v in enumerate(verts)}
    for s in verts:
        rank = order[s]
        path = [s]
        on = {s}
        stack = [iter([w for w in g.neighbors(s) if order[w] > rank])]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on.discard(path.pop())
                continue
            if nxt in on:
                continue
            path.append(nxt)
            on.add(nxt)
            if len(path) >= 4 and g.has_edge(nxt, s) and order[path[1]] < order[nxt]:
                yield tuple(path)
            stack.append(iter([w for w in g.neighbors(nxt) if order[w] > rank and w not in on]))


def cycle_counts(g: BipartiteGraph) -> dict[int, int]:
    """Number of simple cycles of each length, for graphs with n <= 6."""
    _check_oracle_size(g)
    counts: dict[int, int] = {}
    for c in _simple_cycles(g):
        counts[len(c)] = counts.get(len(c), 0) + 1
    return counts


def brute_force_cycle_oracle(g: BipartiteGraph) -> set[int]:
    """Exact set of cycle lengths present in ``g`` (n <= 6 per side)."""
    _check_oracle_size(g)
    left = sum(1 for v in g.vertices() if v.side == Side.LEFT and g.degree(v) >= 2)
    right = sum(1 for v in g.vertices() if v.side == Side.RIGHT and g.degree(v) >= 2)
    possible = set(range(4, 2 * min(left, right) + 1, 2))
    found: set[int] = set()
    for c in _simple_cycles(g):
        found.add(len(c))
        if found >= possible:
            break
    return found


def _check_oracle_size(g: BipartiteGraph) -> None:
    if g.n > ORACLE_MAX_N:
        raise ValueError(f"brute-force oracle supports n <= {ORACLE_MAX_N}, got {g.n}")


# -- experiments -------------------------------------------------------------


@dataclass(frozen=True)
class GridCell:
    """One experiment setting.  Give exactly one of ``C`` and ``p``.

    ``edges_after`` fixes the target edge count of G'; by default G' is
    thinned to ``floor((1 + eps) n^2 p / 2) + 1`` edges.
    """

    n: int
    eps: float
    strategy: Strategy | str
    trials: int
    C: float | None = None
    p: float | None = None
    edges_after: int | None = None
    t_max_override: int | None = None
    core_degree: int | None = None
    strict_bridge: bool = True

    def __post_init__(self):
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        if (self.C is None) == (self.p is None):
            raise ValueError("give exactly one of C and p")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")

    def params(self, seed: int) -> ModelParams:
        if self.C is not None:
            return ModelParams.from_C(self.n, self.C, seed)
        return ModelParams(self.n, self.p, seed)

    def target_edges(self, params: ModelParams) -> int:
        if self.edges_after is not None:
            return self.edges_after
        return math.floor((1 + self.eps) * params.n**2 * params.p / 2) + 1


@dataclass(frozen=True)
class TrialRow:
    cell: int
    trial: int
    seed: int
    n: int
    p: float
    eps: float
    strategy: str
    edges_after: int
    t_range: tuple[int, int]
    misses: tuple[int, ...]
    runtime_ms: int

    def as_csv(self) -> list[str]:
        return [
            str(self.seed),
            str(self.n),
            repr(self.p),
            repr(self.eps),
            self.strategy,
            str(self.edges_after),
            f"{self.t_range[0]}-{self.t_range[1]}",
            ";".join(map(str, self.misses)),
            str(self.runtime_ms),
        ]


@dataclass
class ExperimentReport:
    rows: list[TrialRow]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow(r.as_csv())
        return buf.getvalue()

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(self.to_csv())

    def miss_free(self, cell: int | None = None) -> int:
        return sum(1 for r in self.rows if not r.misses and (cell is None or r.cell == cell))

    def with_misses(self, cell: int | None = None) -> int:
        return sum(1 for r in self.rows if r.misses and (cell is None or r.cell == cell))


def run_trial(cell: GridCell, cell_index: int, trial: int, master_seed: int, timing: bool = False) -> TrialRow:
    t0 = time.perf_counter()
    seed = split_seed(master_seed, cell_index, trial)
    params = cell.params(seed)
    g = sample_gnnp(params)
    budget = max(g.m - cell.target_edges(params), 0)
    gprime = adversary_delete(g, AdversaryStrategy(cell.strategy, budget), split_seed(seed, 1))
    config = PipelineConfig(
        eps=cell.eps,
        t_max_override=cell.t_max_override,
        core_degree=cell.core_degree,
        strict_bridge=cell.strict_bridge,
    )
    cat = find_all_even_cycles(gprime, config, params)
    elapsed = int((time.perf_counter() - t0) * 1000) if timing else 0
    return TrialRow(
        cell=cell_index,
        trial=trial,
        seed=seed,
        n=params.n,
        p=params.p,
        eps=cell.eps,
        strategy=cell.strategy.value,
        edges_after=gprime.m,
        t_range=cat.t_range,
        misses=tuple(cat.missed_lengths()),
        runtime_ms=elapsed,
    )


def _run_job(args):
    return run_trial(*args)


def run_experiment(
    grid: list[GridCell],
    master_seed: int,
    workers: int = 1,
    timing: bool = False,
) -> ExperimentReport:
    """Run every trial of every cell.

    ``runtime_ms`` is written as 0 unless ``timing`` is set, which keeps the
    CSV byte-identical across runs with the same seed.
    """
    jobs = [(cell, ci, k, master_seed, timing) for ci, cell in enumerate(grid) for k in range(cell.trials)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_job, jobs))
    else:
        rows = [_run_job(j) for j in jobs]
    rows.sort(key=lambda r: (r.cell, r.trial))
    return ExperimentReport(rows)

