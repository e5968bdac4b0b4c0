"""Pósa rotation-extension search for a long path with a fixed endpoint.

The path grows from a fixed ``start``.  When the far endpoint has no
neighbour off the path, rotations are explored breadth-first: for a path
``u0 .. ui u(i+1) .. uk`` and an edge ``uk ui``, the path
``u0 .. ui uk .. u(i+1)`` has the new far endpoint ``u(i+1)``.  One path is
kept per reachable endpoint.  If some reachable endpoint can be extended the
search continues from that path; if none can, the endpoint set ``S`` is
closed, and every neighbour of ``S`` outside ``S`` is a predecessor or
successor of a member of ``S`` on the path where rotation started.  The far
endpoint has no successor, so ``|N(S) \\ S| <= 2|S| - 1`` and ``S`` is
returned as an :class:`ExpansionWitness`.

Greedy extension can walk into a dead end (a pendant vertex, say) while a
longer path from ``start`` still exists.  Before giving up, a bounded
depth-first search over simple paths from ``start`` is tried; only if that
also fails is the closure witness returned.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph_core import BipartiteGraph, PathRecord, Vertex, outer_neighborhood_size


class RotationBudgetExceeded(RuntimeError):
    """More rotation states were explored than the configured cap allows."""


@dataclass(frozen=True)
class ExpansionWitness:
    """A set ``x`` with ``|N(x) \\ x| = neighborhood_size < 2|x|``.

    ``path`` is the longest path reached before the search closed, when the
    witness comes from rotation-extension.
    """

    x: frozenset[Vertex]
    neighborhood_size: int
    path: PathRecord | None = None

    def verify(self, g: BipartiteGraph) -> bool:
        return (
            len(self.x) > 0
            and outer_neighborhood_size(g, self.x) == self.neighborhood_size
            and self.neighborhood_size < 2 * len(self.x)
        )


def _rotate(path: list[Vertex], pivot_pos: int) -> list[Vertex]:
    return path[: pivot_pos + 1] + path[:pivot_pos:-1]


def find_long_path(
    view: BipartiteGraph,
    start: Vertex,
    target_len: int,
    max_states: int | None = None,
    backtrack_budget: int = 100_000,
) -> PathRecord | ExpansionWitness:
    """Path of exactly ``target_len`` edges from ``start``, or a witness.

    ``max_states`` caps the rotations tried while closing one endpoint set
    (default ``|V(view)|**2``); exceeding it raises
    :class:`RotationBudgetExceeded`.  ``backtrack_budget`` caps the
    extension steps of the fallback search (0 disables it).
    """
    view.check_vertex(start)
    if target_len < 1:
        raise ValueError(f"target_len must be >= 1, got {target_len}")
    nv = view.num_vertices
    cap = nv * nv if max_states is None else max_states

    path = [start]
    on_path = 1 << view.slot(start)
    while len(path) - 1 < target_len:
        ext = _extension(view, path[-1], on_path)
        if ext is not None:
            path.append(ext)
            on_path |= 1 << view.slot(ext)
            continue

        # the endpoint is stuck: close its rotation class
        found = None
        endpoints = {path[-1]: path}
        queue = deque([path])
        states = 0
        while queue and found is None:
            cur = queue.popleft()
            pos = {v: i for i, v in enumerate(cur)}
            end = cur[-1]
            for w in view.neighbors(end):
                i = pos.get(w)
                if i is None or i >= len(cur) - 2:
                    continue
                states += 1
                if states > cap:
                    raise RotationBudgetExceeded(
                        f"rotation closure exceeded {cap} states at path length {len(cur) - 1}"
                    )
                new_end = cur[i + 1]
                if new_end in endpoints:
                    continue
                rotated = _rotate(cur, i)
                endpoints[new_end] = rotated
                if _extension(view, new_end, on_path) is not None:
                    found = rotated
                    break
                queue.append(rotated)
        if found is None:
            x = frozenset(endpoints)
            size = outer_neighborhood_size(view, x)
            witness = ExpansionWitness(x, size, PathRecord(tuple(path)))
            if not size < 2 * len(x):
                raise AssertionError(f"rotation closure produced a non-witness: |X|={len(x)}, |N(X)\\X|={size}")
            if backtrack_budget > 0:
                longer = _backtrack(view, start, target_len, backtrack_budget)
                if longer is not None:
                    return PathRecord(tuple(longer))
            return witness
        path = found
    return PathRecord(tuple(path))


def _extension(view: BipartiteGraph, end: Vertex, on_path: int) -> Vertex | None:
    """Lowest neighbour of ``end`` not on the path."""
    free = view.neighbor_mask(end) & ~on_path
    if not free:
        return None
    low = free & -free
    return view.vertex_at(low.bit_length() - 1)


def _backtrack(view: BipartiteGraph, start: Vertex, target_len: int, budget: int) -> list[Vertex] | None:
    """Depth-first search over simple paths from ``start``; ``None`` when
    the budget runs out or no path of ``target_len`` edges exists."""
    path = [start]
    on_path = 1 << view.slot(start)
    stack = [iter(view.neighbors(start))]
    steps = 0
    while stack:
        w = next(stack[-1], None)
        if w is None:
            stack.pop()
            on_path &= ~(1 << view.slot(path.pop()))
            continue
        bit = 1 << view.slot(w)
        if on_path & bit:
            continue
        steps += 1
        if steps > budget:
            return None
        path.append(w)
        on_path |= bit
        if len(path) - 1 == target_len:
            return path
        stack.append(iter(view.neighbors(w)))
    return None
