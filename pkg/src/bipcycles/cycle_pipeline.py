"""Even cycles of every length in a range, built around a dense root vertex.

Pipeline on a graph ``G'`` with parameters ``(n, p)`` and ``eps``:

1. heavy vertices: degree >= (1 + eps/2) n p / 2, per side;
2. a root ``v0`` with at least ``eps n p / 4`` heavy neighbours ``W``;
3. a bridge set ``B`` of ``ceil(eps n^2 p^2 / 4)`` heavy same-side vertices
   reached through ``W``, chosen greedily by edges into ``W``;
4. the core ``D``: the ``ceil((1 + eps/2) n p / 4)``-core of ``G'[B + N(v0)]``;
5. a path ``v0 v1 v2`` into ``D`` and a long path from ``v2`` inside ``D``;
6. one cycle per even ``t``, closed back to ``v0`` through a path vertex at
   odd distance from ``v2`` (those all lie in ``N(v0)``).

If ``v0`` is not found on the Left side the Right side is tried with the
roles of the two sides swapped.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .graph_core import (
    BipartiteGraph,
    CycleRecord,
    PathRecord,
    Side,
    Vertex,
    edges_between,
    induced_subgraph,
    validate_cycle,
)
from .degeneracy import prune_to_min_degree
from .posa import ExpansionWitness, RotationBudgetExceeded, find_long_path
from .random_model import ModelParams

log = logging.getLogger(__name__)


class PipelineError(Exception):
    """A stage of the pipeline could not produce its object."""


class NoRootError(PipelineError):
    pass


class BridgeError(PipelineError):
    def __init__(self, reason: str, stats: "BridgeStats | None" = None):
        super().__init__(reason)
        self.reason = reason
        self.stats = stats


class PathLengthError(PipelineError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    """``core_degree`` and ``strict_bridge`` exist for exploration; the
    defaults use the constants of the construction unchanged."""

    eps: float
    t_max_override: int | None = None
    verify_each_cycle: bool = True
    core_degree: int | None = None
    strict_bridge: bool = True

    def __post_init__(self):
        if not 0.0 < self.eps <= 0.4:
            raise ValueError(f"eps must lie in (0, 2/5], got {self.eps}")
        t = self.t_max_override
        if t is not None and (t < 4 or t % 2):
            raise ValueError(f"t_max_override must be even and >= 4, got {t}")
        if self.core_degree is not None and self.core_degree < 1:
            raise ValueError(f"core_degree must be >= 1, got {self.core_degree}")

    def t_max(self, n: int) -> int:
        if self.t_max_override is not None:
            return self.t_max_override
        return default_t_max(n, self.eps)


def default_t_max(n: int, eps: float) -> int:
    """(1 + eps/2) n / 30 rounded down to an even integer."""
    return 2 * math.floor(round((1 + eps / 2) * n / 60, 9))


@dataclass(frozen=True)
class HeavyVertexSets:
    b0: frozenset[Vertex]
    b1: frozenset[Vertex]
    degree_threshold: float
    np_: float
    warnings: tuple[str, ...] = ()

    def on(self, side: Side) -> frozenset[Vertex]:
        return self.b0 if side == Side.LEFT else self.b1


class BridgeStats(NamedTuple):
    heavy_neighbors: int  # |N(v0) & heavy other side|
    bridge_edges: int  # e(N(v0), B)
    union_size: int  # |B + N(v0)|


@dataclass(frozen=True)
class RootSelection:
    v0: Vertex
    bridge_b: frozenset[Vertex]
    core_d: frozenset[Vertex]
    stats: BridgeStats
    core_degree: int
    warnings: tuple[str, ...] = ()


@dataclass
class CycleCatalog:
    t_range: tuple[int, int]
    cycles: dict[int, CycleRecord] = field(default_factory=dict)
    cases: dict[int, str] = field(default_factory=dict)
    misses: list[tuple[int, str]] = field(default_factory=list)
    notices: list[str] = field(default_factory=list)
    selection: RootSelection | None = None
    v1: Vertex | None = None
    v2: Vertex | None = None
    path: PathRecord | None = None
    witness: ExpansionWitness | None = None

    @property
    def wanted(self) -> list[int]:
        lo, hi = self.t_range
        return list(range(lo, hi + 1, 2))

    @property
    def complete(self) -> bool:
        return not self.misses and all(t in self.cycles for t in self.wanted)

    def missed_lengths(self) -> list[int]:
        return sorted({t for t, _ in self.misses})


def heavy_vertices(gprime: BipartiteGraph, params: ModelParams, eps: float) -> HeavyVertexSets:
    n, p = params.n, params.p
    if gprime.n != n:
        raise ValueError(f"graph has n={gprime.n}, params have n={n}")
    np_ = n * p
    thr = (1 + eps / 2) * np_ / 2
    sets = []
    for side in (Side.LEFT, Side.RIGHT):
        degs = gprime.degrees(side)
        sets.append(frozenset(Vertex(side, i) for i in range(n) if degs[i] >= thr and Vertex(side, i) in gprime))
    warnings = []
    if gprime.m > (1 + eps) * n * n * p / 2:
        floor_size = eps / (2 + 3 * eps) * n
        for side, s in zip(("B0", "B1"), sets):
            if len(s) < floor_size:
                warnings.append(f"|{side}|={len(s)} below derived lower bound {floor_size:.1f}")
    for w in warnings:
        log.warning(w)
    return HeavyVertexSets(sets[0], sets[1], thr, np_, tuple(warnings))


def select_root(gprime: BipartiteGraph, heavy: HeavyVertexSets, eps: float) -> Vertex:
    """Vertex with the most heavy neighbours, Left side first.

    Ties go to the lowest index.  Raises :class:`NoRootError` when neither
    side has a vertex with at least ``eps n p / 4`` heavy neighbours.
    """
    need = eps * heavy.np_ / 4
    best_seen = 0
    for side in (Side.LEFT, Side.RIGHT):
        target = gprime.mask(heavy.on(side.other))
        best, best_count = None, -1
        for i in range(gprime.n):
            v = Vertex(side, i)
            if v not in gprime:
                continue
            c = (gprime.neighbor_mask(v) & target).bit_count()
            if c > best_count:
                best, best_count = v, c
        best_seen = max(best_seen, best_count)
        if best is not None and best_count >= need:
            return best
    raise NoRootError(f"no root: best heavy-neighbour count {best_seen} < {need:.2f}")


def build_bridge_set(
    gprime: BipartiteGraph,
    v0: Vertex,
    heavy: HeavyVertexSets,
    eps: float,
    core_degree: int | None = None,
    strict: bool = True,
) -> RootSelection:
    np_ = heavy.np_
    side = v0.side
    nbr0 = gprime.neighbors(v0)
    w_mask = gprime.neighbor_mask(v0) & gprime.mask(heavy.on(side.other))
    pool_mask = gprime.mask(heavy.on(side)) & ~(1 << gprime.slot(v0))
    reach = 0
    bits = w_mask
    while bits:
        low = bits & -bits
        reach |= gprime.neighbor_mask(gprime.vertex_at(low.bit_length() - 1))
        bits ^= low
    pool = gprime.unmask(reach & pool_mask)
    need_pool = eps * np_ * np_ / 4
    size = math.ceil(round(need_pool, 9))
    partial = BridgeStats(w_mask.bit_count(), 0, len(nbr0))
    if not len(pool) > need_pool or size == 0:
        raise BridgeError(
            f"second neighborhood too sparse: |P|={len(pool)} not > {need_pool:.1f}", partial
        )
    ranked = sorted(pool, key=lambda w: (-(gprime.neighbor_mask(w) & w_mask).bit_count(), w))
    bridge = frozenset(ranked[:size])
    union = bridge | frozenset(nbr0)
    stats = BridgeStats(w_mask.bit_count(), edges_between(gprime, nbr0, bridge), len(union))

    warnings = []
    density_bound = eps * (1 + eps / 2) * np_**3 / 8
    if stats.bridge_edges < density_bound:
        msg = f"bridge density: e(N(v0),B)={stats.bridge_edges} < {density_bound:.1f}"
        if strict:
            raise BridgeError(msg, stats)
        warnings.append(msg)
    size_bound = eps * np_ * np_ / 2
    if stats.union_size > size_bound:
        # only bounds |D|; the cycles stay valid, so this never aborts
        warnings.append(f"bridge size: |B+N(v0)|={stats.union_size} > {size_bound:.1f}")

    d = core_degree if core_degree is not None else math.ceil(round((1 + eps / 2) * np_ / 4, 9))
    core = prune_to_min_degree(gprime, union, d)
    if not core:
        raise BridgeError(f"core empty: {d}-core of G'[B + N(v0)] is empty", stats)
    return RootSelection(v0, bridge, core, stats, d, tuple(warnings))


def close_cycle(path: PathRecord, v0: Vertex, v1: Vertex, t: int) -> CycleRecord:
    """Close a ``t``-cycle through ``v0`` from the path ``v2 x1 x2 ...``.

    If ``x1 != v1`` the cycle is ``v0 v1 v2 x1 .. x(t-3)``; if ``x1 == v1``
    it is ``v0 x1 .. x(t-1)``.  When ``x1 != v1`` but ``v1`` itself reappears
    among ``x1 .. x(t-3)`` the first form repeats a vertex, so the second
    form is used instead.
    """
    if t < 4 or t % 2:
        raise ValueError(f"cycle length must be even and >= 4, got {t}")
    xs = path.vertices[1:]
    first_case = not xs or xs[0] != v1
    if first_case:
        s = t - 3
        if len(xs) < s:
            raise PathLengthError(f"t={t} needs path length {s}, have {len(xs)}")
        if v1 not in xs[:s]:
            return CycleRecord((v0, v1, path.vertices[0]) + xs[:s])
    s = t - 1
    if len(xs) < s:
        raise PathLengthError(f"t={t} needs path length {s}, have {len(xs)}")
    return CycleRecord((v0,) + xs[:s])


def closure_case(path: PathRecord, v1: Vertex, t: int) -> str:
    xs = path.vertices[1:]
    if xs and xs[0] != v1 and v1 not in xs[: t - 3]:
        return "i"
    return "ii"


def find_all_even_cycles(
    gprime: BipartiteGraph, config: PipelineConfig, params: ModelParams
) -> CycleCatalog:
    """Run the whole construction; failures become ``misses``, never exceptions."""
    n, p, eps = params.n, params.p, config.eps
    t_max = config.t_max(n)
    cat = CycleCatalog(t_range=(4, t_max))
    if t_max < 4:
        cat.t_range = (4, 4)
        cat.notices.append(
            f"degenerate scale: default t_max={t_max} < 4 at n={n}; set t_max_override"
        )
        cat.misses.append((4, "degenerate scale"))
        return cat
    wanted = cat.wanted

    def miss_all(reason: str, ts=None) -> CycleCatalog:
        cat.misses.extend((t, reason) for t in (wanted if ts is None else ts))
        return cat

    need_edges = (1 + eps) * n * n * p / 2
    if not gprime.m > need_edges:
        cat.notices.append(f"e(G')={gprime.m} not above (1+eps)n^2p/2={need_edges:.1f}")

    heavy = heavy_vertices(gprime, params, eps)
    cat.notices.extend(heavy.warnings)
    try:
        v0 = select_root(gprime, heavy, eps)
        sel = build_bridge_set(gprime, v0, heavy, eps, config.core_degree, config.strict_bridge)
    except PipelineError as exc:
        return miss_all(str(exc))
    cat.selection = sel
    cat.notices.extend(sel.warnings)

    core = sel.core_d
    pair = None
    for v1 in sorted(w for w in gprime.neighbors(v0) if w in core):
        v2s = sorted(w for w in gprime.neighbors(v1) if w in core)
        if v2s:
            pair = (v1, v2s[0])
            break
    if pair is None:
        return miss_all("no path v0 v1 v2 into the core")
    v1, v2 = pair
    cat.v1, cat.v2 = pair

    view = induced_subgraph(gprime, core)
    try:
        res = find_long_path(view, v2, t_max - 1)
    except RotationBudgetExceeded as exc:
        return miss_all(f"rotation budget exhausted: {exc}")
    if isinstance(res, ExpansionWitness):
        cat.witness = res
        path = res.path
    else:
        path = res
    cat.path = path

    for t in wanted:
        try:
            c = close_cycle(path, v0, v1, t)
        except PathLengthError as exc:
            reason = str(exc)
            if cat.witness is not None:
                reason += f"; expansion witness |X|={len(cat.witness.x)}, |N(X)\\X|={cat.witness.neighborhood_size}"
            cat.misses.append((t, reason))
            continue
        if config.verify_each_cycle:
            verdict = validate_cycle(gprime, c)
            if not verdict.ok:
                cat.misses.append((t, f"closed cycle rejected: {verdict.reason}"))
                continue
        cat.cycles[t] = c
        cat.cases[t] = closure_case(path, v1, t)
    return cat
