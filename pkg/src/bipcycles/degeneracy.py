"""Minimum-degree subgraphs by worklist peeling (the d-core)."""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .graph_core import BipartiteGraph, Vertex


def prune_to_min_degree(
    g: BipartiteGraph,
    restrict: Iterable[Vertex],
    d: int,
    trace: list[tuple[Vertex, int]] | None = None,
) -> frozenset[Vertex]:
    """Return the d-core of ``g[restrict]``: the unique maximal vertex set
    whose induced subgraph has minimum degree >= d.

    Vertices below degree ``d`` are queued and removed; each removal
    decrements its surviving neighbours and queues any that drop below ``d``.
    The result does not depend on removal order.  If ``trace`` is given, each
    removal is appended as ``(vertex, degree_at_removal)``.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    alive = set(restrict)
    for v in alive:
        g.check_vertex(v)
    amask = g.mask(alive)
    deg = {v: (g.neighbor_mask(v) & amask).bit_count() for v in alive}
    queue = deque(sorted(v for v in alive if deg[v] < d))
    queued = set(queue)
    while queue:
        v = queue.popleft()
        if trace is not None:
            trace.append((v, deg[v]))
        alive.discard(v)
        for w in g.neighbors(v):
            if w in alive and w not in queued:
                deg[w] -= 1
                if deg[w] < d:
                    queue.append(w)
                    queued.add(w)
    return frozenset(alive)
