"""Vertex-expansion checks, small dense-set search, and the density union bound.

The expansion property checked here: every nonempty ``X`` with
``|X| <= limit`` has ``|N(X) \\ X| >= 2|X|``.  The exact checker enumerates
all subsets of the view (at most 24 vertices); the sampled checker draws
random sets and can only ever report a real violation, never prove absence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph_core import BipartiteGraph, Vertex
from .posa import ExpansionWitness
from .random_model import make_rng

EXACT_MAX_VERTICES = 24


@dataclass(frozen=True)
class ExpansionOk:
    checked: int
    method: str  # "exact", "sampled" or "heuristic"

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class DenseSetReport:
    y: frozenset[Vertex]
    edges: int
    threshold: float


def check_expansion_exact(view: BipartiteGraph, limit: int) -> ExpansionOk | ExpansionWitness:
    """Check every nonempty ``X`` with ``|X| <= limit``.

    On failure the violating set with the fewest vertices is returned, ties
    broken by lowest position in the view's (side, index) vertex order.
    """
    verts = view.vertices()
    k = len(verts)
    if k > EXACT_MAX_VERTICES:
        raise ValueError(
            f"exact expansion check supports at most {EXACT_MAX_VERTICES} vertices, "
            f"got {k}; use check_expansion_sampled"
        )
    if not 0 <= limit <= k:
        raise ValueError(f"limit must lie in [0, {k}], got {limit}")
    if k == 0 or limit == 0:
        return ExpansionOk(0, "exact")
    # neighbourhoods in local bit positions
    local = {v: i for i, v in enumerate(verts)}
    adj = np.zeros(k, dtype=np.uint32)
    for v, i in local.items():
        adj[i] = sum(1 << local[w] for w in view.neighbors(v))
    # nb[mask] = OR of adj over members, built by doubling
    nb = np.zeros(1 << k, dtype=np.uint32)
    for i in range(k):
        nb[1 << i : 1 << (i + 1)] = nb[: 1 << i] | adj[i]
    masks = np.arange(1 << k, dtype=np.uint32)
    size = np.bitwise_count(masks)
    outer = np.bitwise_count(nb & ~masks)
    bad = (size >= 1) & (size <= limit) & (outer < 2 * size)
    checked = int(np.count_nonzero((size >= 1) & (size <= limit)))
    if not bad.any():
        return ExpansionOk(checked, "exact")
    idx = np.flatnonzero(bad).astype(np.uint32)
    smallest = size[idx].min()
    idx = idx[size[idx] == smallest]
    # lexicographically smallest sorted member list: fix the lowest bit, repeat
    rest = idx.copy()
    for _ in range(int(smallest)):
        low = rest & (~rest + np.uint32(1))
        keep = low == low.min()
        idx, rest = idx[keep], rest[keep] ^ low[keep]
    keyed = int(idx[0])
    x = frozenset(verts[j] for j in range(k) if keyed >> j & 1)
    return ExpansionWitness(x, int(outer[keyed]))


def check_expansion_sampled(
    view: BipartiteGraph, limit: int, trials: int, seed: int
) -> ExpansionOk | ExpansionWitness:
    """Draw ``trials`` random sets (size uniform in [1, limit], then members
    uniform without replacement) and report the first violation found.

    An ``ExpansionOk`` here is labelled ``"sampled"``: evidence, not proof.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    verts = view.vertices()
    if not verts or limit < 1:
        return ExpansionOk(0, "sampled")
    limit = min(limit, len(verts))
    rng = make_rng(seed)
    masks = [view.neighbor_mask(v) for v in verts]
    slots = [1 << view.slot(v) for v in verts]
    sizes = rng.integers(1, limit + 1, size=trials)
    for s in sizes.tolist():
        pick = rng.choice(len(verts), size=s, replace=False).tolist()
        nb = 0
        xm = 0
        for j in pick:
            nb |= masks[j]
            xm |= slots[j]
        outer = (nb & ~xm).bit_count()
        if outer < 2 * s:
            return ExpansionWitness(frozenset(verts[j] for j in pick), outer)
    return ExpansionOk(trials, "sampled")


def small_set_density_check(
    view: BipartiteGraph,
    a_min: int,
    a_max: int,
    threshold_coeff: float,
    trials: int,
    seed: int,
) -> ExpansionOk | DenseSetReport:
    """Heuristic search for ``Y`` with ``a_min <= |Y| <= a_max`` and
    ``e(Y) >= threshold_coeff * |Y|``.

    Two strategies: peel minimum-degree vertices off the whole view and test
    every intermediate set in the size window; then ``trials`` random
    restarts that grow a set from a random seed vertex, always adding the
    vertex with the most edges into the current set.
    """
    nv = view.num_vertices
    if not 1 <= a_min <= a_max <= nv:
        if nv == 0:
            return ExpansionOk(0, "heuristic")
        raise ValueError(f"need 1 <= a_min <= a_max <= {nv}, got {a_min}, {a_max}")
    verts = view.vertices()

    def dense(ys: set[Vertex], e: int) -> bool:
        return a_min <= len(ys) <= a_max and e >= threshold_coeff * len(ys)

    # greedy peel
    alive = set(verts)
    amask = view.mask(alive)
    deg = {v: (view.neighbor_mask(v) & amask).bit_count() for v in alive}
    e = sum(deg.values()) // 2
    examined = 0
    while alive:
        if dense(alive, e):
            return DenseSetReport(frozenset(alive), e, threshold_coeff * len(alive))
        examined += 1
        v = min(alive, key=lambda u: (deg[u], u))
        alive.remove(v)
        e -= deg[v]
        for w in view.neighbors(v):
            if w in alive:
                deg[w] -= 1

    rng = make_rng(seed)
    for _ in range(trials):
        root = verts[int(rng.integers(len(verts)))]
        ys = {root}
        e = 0
        gain: dict[Vertex, int] = {}
        for w in view.neighbors(root):
            gain[w] = 1
        while len(ys) < a_max:
            if dense(ys, e):
                return DenseSetReport(frozenset(ys), e, threshold_coeff * len(ys))
            if gain:
                best = max(gain.values())
                cands = sorted(w for w, g in gain.items() if g == best)
                w = cands[int(rng.integers(len(cands)))]
                e += gain.pop(w)
            else:
                rest = [v for v in verts if v not in ys]
                w = rest[int(rng.integers(len(rest)))]
            ys.add(w)
            for x in view.neighbors(w):
                if x not in ys:
                    gain[x] = gain.get(x, 0) + 1
        examined += 1
        if dense(ys, e):
            return DenseSetReport(frozenset(ys), e, threshold_coeff * len(ys))
    return ExpansionOk(examined, "heuristic")


def _log_comb(n: int, k: int) -> float:
    if k < 0 or k > n:
        return -math.inf
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def density_edge_threshold(a: int, eps_prime: float, n: int, p: float) -> int:
    """k = ceil(a * eps' * n * p / 6)."""
    return math.ceil(round(a * eps_prime * n * p / 6.0, 9))


def eval_density_union_bound(n: int, a: int, eps_prime: float, p: float) -> float:
    """Natural log of
    ``sum_{b=1}^{a-1} C(n, b) C(n, a-b) C((a-b) b, k) p^k``
    with ``k = ceil(a eps' n p / 6)``.

    This bounds the probability that some ``a``-set of G(n, n, p) with ``b``
    Left and ``a - b`` Right vertices spans at least ``k`` edges.  Returns
    ``-inf`` when every term vanishes.
    """
    if not 1 <= a <= 2 * n:
        raise ValueError(f"a must lie in [1, 2n], got {a}")
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    if not 0.0 < eps_prime < 1.0:
        raise ValueError(f"eps_prime must lie in (0, 1), got {eps_prime}")
    k = density_edge_threshold(a, eps_prime, n, p)
    logp = math.log(p)
    terms = []
    for b in range(1, a):
        t = _log_comb(n, b) + _log_comb(n, a - b) + _log_comb((a - b) * b, k)
        if t > -math.inf:
            terms.append(t + k * logp)
    if not terms:
        return -math.inf
    top = max(terms)
    return top + math.log(sum(math.exp(t - top) for t in terms))
