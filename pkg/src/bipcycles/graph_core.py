"""Immutable bipartite graphs, neighbourhood counting, path/cycle validation.

A vertex is ``(side, index)`` with ``side`` in {LEFT, RIGHT}.  Internally each
vertex also owns a *slot* ``side * n + index`` so that vertex sets can be held
as Python-int bitsets over ``2n`` bits; neighbourhood unions and popcounts
then run at word speed.

Induced subgraphs keep the parent's indices: a view is just a graph whose
``universe`` is a strict subset of the ``2n`` vertices.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple

import numpy as np


class GraphError(ValueError):
    """Domain error: bad vertex, bad edge, or malformed edge list."""


class Side(enum.IntEnum):
    LEFT = 0
    RIGHT = 1

    @property
    def other(self) -> "Side":
        return Side(1 - self)


class Vertex(NamedTuple):
    side: Side
    index: int

    def __repr__(self) -> str:
        return f"{'L' if self.side == Side.LEFT else 'R'}{self.index}"


def L(i: int) -> Vertex:
    return Vertex(Side.LEFT, i)


def R(i: int) -> Vertex:
    return Vertex(Side.RIGHT, i)


VertexSet = frozenset  # frozenset[Vertex]


@dataclass(frozen=True)
class PathRecord:
    vertices: tuple[Vertex, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> Vertex:
        return self.vertices[0]

    def truncate(self, length: int) -> "PathRecord":
        return PathRecord(self.vertices[: length + 1])


@dataclass(frozen=True)
class CycleRecord:
    """Closed walk given by its vertices; the last-to-first edge is implicit."""

    vertices: tuple[Vertex, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def rotated(self, k: int) -> "CycleRecord":
        k %= max(len(self.vertices), 1)
        return CycleRecord(self.vertices[k:] + self.vertices[:k])

    def reversed(self) -> "CycleRecord":
        return CycleRecord(tuple(reversed(self.vertices)))


class Validation(NamedTuple):
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


ACCEPTED = Validation(True)


class BipartiteGraph:
    """Bipartite graph with ``n`` vertices per side; immutable.

    ``edges`` are ``(left_index, right_index)`` pairs.  ``universe`` restricts
    the vertex set (used by induced views); every edge must lie inside it.
    """

    __slots__ = ("n", "_edges", "_universe", "_nbrs", "_masks", "_umask")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        universe: Iterable[Vertex] | None = None,
    ):
        if n < 1:
            raise GraphError(f"n must be >= 1, got {n}")
        self.n = int(n)
        edge_list = [(int(u), int(v)) for u, v in edges]
        edge_set = frozenset(edge_list)
        if len(edge_set) != len(edge_list):
            raise GraphError("duplicate edge")
        for u, v in edge_set:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if universe is None:
            self._universe = None
            self._umask = (1 << (2 * n)) - 1
        else:
            uni = frozenset(universe)
            for x in uni:
                self._check(x)
            self._umask = _mask_of(n, uni)
            self._universe = None if len(uni) == 2 * n else uni
            for u, v in edge_set:
                if L(u) not in uni or R(v) not in uni:
                    raise GraphError(f"edge ({u}, {v}) leaves the vertex universe")
        self._edges = edge_set
        left: list[list[int]] = [[] for _ in range(n)]
        right: list[list[int]] = [[] for _ in range(n)]
        for u, v in edge_set:
            left[u].append(v)
            right[v].append(u)
        self._nbrs = (
            [tuple(Vertex(Side.RIGHT, v) for v in sorted(vs)) for vs in left],
            [tuple(Vertex(Side.LEFT, u) for u in sorted(us)) for us in right],
        )
        masks_l = [0] * n
        masks_r = [0] * n
        for u, v in edge_set:
            masks_l[u] |= 1 << (n + v)
            masks_r[v] |= 1 << u
        self._masks = (masks_l, masks_r)

    @classmethod
    def from_adjacency(cls, adj: np.ndarray) -> "BipartiteGraph":
        """Build from an ``n x n`` 0/1 matrix, rows Left, columns Right."""
        adj = np.asarray(adj)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise GraphError(f"adjacency must be square, got shape {adj.shape}")
        us, vs = np.nonzero(adj)
        return cls(adj.shape[0], zip(us.tolist(), vs.tolist()))

    @classmethod
    def complete(cls, n: int) -> "BipartiteGraph":
        return cls(n, ((u, v) for u in range(n) for v in range(n)))

    # -- basic queries -------------------------------------------------

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    @property
    def is_view(self) -> bool:
        return self._universe is not None

    def vertices(self) -> list[Vertex]:
        if self._universe is None:
            return [L(i) for i in range(self.n)] + [R(i) for i in range(self.n)]
        return sorted(self._universe)

    @property
    def universe(self) -> frozenset[Vertex]:
        if self._universe is None:
            return frozenset(self.vertices())
        return self._universe

    @property
    def num_vertices(self) -> int:
        return self._umask.bit_count()

    def __contains__(self, v: object) -> bool:
        if not isinstance(v, tuple) or len(v) != 2:
            return False
        side, i = v
        if side not in (0, 1) or not isinstance(i, (int, np.integer)) or not 0 <= i < self.n:
            return False
        return bool(self._umask >> (side * self.n + int(i)) & 1)

    def _check(self, v: Vertex) -> None:
        side, i = v
        if side not in (0, 1) or not 0 <= i < self.n:
            raise GraphError(f"vertex {v!r} not in graph with n={self.n}")

    def check_vertex(self, v: Vertex) -> None:
        if v not in self:
            raise GraphError(f"vertex {v!r} not in graph")

    def neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        self.check_vertex(v)
        return self._nbrs[v[0]][v[1]]

    def degree(self, v: Vertex) -> int:
        return len(self.neighbors(v))

    def has_edge(self, a: Vertex, b: Vertex) -> bool:
        if a[0] == b[0]:
            return False
        if a[0] == Side.RIGHT:
            a, b = b, a
        return (a[1], b[1]) in self._edges

    # -- bitset helpers -----------------------------------------------

    def slot(self, v: Vertex) -> int:
        return v[0] * self.n + v[1]

    def vertex_at(self, slot: int) -> Vertex:
        return Vertex(Side(slot // self.n), slot % self.n)

    def mask(self, vs: Iterable[Vertex]) -> int:
        return _mask_of(self.n, vs)

    def unmask(self, bits: int) -> frozenset[Vertex]:
        out = []
        while bits:
            low = bits & -bits
            out.append(self.vertex_at(low.bit_length() - 1))
            bits ^= low
        return frozenset(out)

    def neighbor_mask(self, v: Vertex) -> int:
        return self._masks[v[0]][v[1]]

    def neighborhood_mask(self, xs: Iterable[Vertex]) -> int:
        bits = 0
        masks = self._masks
        for side, i in xs:
            bits |= masks[side][i]
        return bits

    def degrees(self, side: Side) -> np.ndarray:
        return np.fromiter((len(t) for t in self._nbrs[side]), dtype=np.int64, count=self.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self._edges == other._edges
            and self._umask == other._umask
        )

    def __hash__(self) -> int:
        return hash((self.n, self._edges, self._umask))

    def __repr__(self) -> str:
        view = f", view of {self.num_vertices}" if self.is_view else ""
        return f"BipartiteGraph(n={self.n}, m={self.m}{view})"


def _mask_of(n: int, vs: Iterable[Vertex]) -> int:
    bits = 0
    for side, i in vs:
        bits |= 1 << (side * n + i)
    return bits


# -- operations ---------------------------------------------------------


def degree(g: BipartiteGraph, v: Vertex) -> int:
    return g.degree(v)


def neighborhood(g: BipartiteGraph, xs: Iterable[Vertex]) -> frozenset[Vertex]:
    """N(X): every vertex adjacent to some member of X (may intersect X)."""
    xs = list(xs)
    for x in xs:
        g.check_vertex(x)
    return g.unmask(g.neighborhood_mask(xs))


def outer_neighborhood_size(g: BipartiteGraph, xs: Iterable[Vertex]) -> int:
    """|N(X) \\ X|."""
    xs = list(xs)
    return (g.neighborhood_mask(xs) & ~g.mask(xs)).bit_count()


def kth_neighborhood(g: BipartiteGraph, v: Vertex, k: int) -> frozenset[Vertex]:
    """Vertices at graph distance exactly ``k`` from ``v``."""
    g.check_vertex(v)
    if k < 1:
        raise GraphError(f"k must be >= 1, got {k}")
    seen = 1 << g.slot(v)
    frontier = seen
    for _ in range(k):
        nxt = 0
        bits = frontier
        while bits:
            low = bits & -bits
            nxt |= g.neighbor_mask(g.vertex_at(low.bit_length() - 1))
            bits ^= low
        frontier = nxt & ~seen
        seen |= frontier
        if not frontier:
            break
    return g.unmask(frontier)


def edges_between(g: BipartiteGraph, xs: Iterable[Vertex], ys: Iterable[Vertex]) -> int:
    """e(X, Y): ordered pairs (x, y) with x in X, y in Y and xy an edge.

    Edges inside ``X & Y`` are counted in both orientations, so
    ``edges_between(g, X, X) == 2 * e(X)``.
    """
    ymask = g.mask(ys)
    return sum((g.neighbor_mask(x) & ymask).bit_count() for x in set(xs))


def edges_inside(g: BipartiteGraph, xs: Iterable[Vertex]) -> int:
    """e(X), unordered edges with both ends in X."""
    xs = set(xs)
    mask = g.mask(xs)
    return sum((g.neighbor_mask(x) & mask).bit_count() for x in xs if x[0] == Side.LEFT)


def induced_subgraph(g: BipartiteGraph, s: Iterable[Vertex]) -> BipartiteGraph:
    s = frozenset(s)
    for v in s:
        g.check_vertex(v)
    if s == g.universe:
        return g
    keep = [(u, v) for u, v in g.edges if L(u) in s and R(v) in s]
    return BipartiteGraph(g.n, keep, universe=s)


def delete_edges(g: BipartiteGraph, removal: Iterable[tuple[int, int]]) -> BipartiteGraph:
    removal = frozenset((int(u), int(v)) for u, v in removal)
    missing = removal - g.edges
    if missing:
        raise GraphError(f"cannot delete non-edges: {sorted(missing)[:5]}")
    if not removal:
        return g
    return BipartiteGraph(
        g.n, g.edges - removal, universe=g._universe if g.is_view else None
    )


def validate_path(g: BipartiteGraph, p: PathRecord) -> Validation:
    vs = p.vertices
    if not vs:
        return Validation(False, "empty path")
    for v in vs:
        if v not in g:
            return Validation(False, f"vertex {v!r} not in graph")
    if len(set(vs)) != len(vs):
        return Validation(False, "repeated vertex")
    for a, b in zip(vs, vs[1:]):
        if a[0] == b[0]:
            return Validation(False, f"{a!r} and {b!r} on the same side")
        if not g.has_edge(a, b):
            return Validation(False, f"missing edge {a!r}-{b!r}")
    return ACCEPTED


def validate_cycle(g: BipartiteGraph, c: CycleRecord) -> Validation:
    """Accept iff ``c`` is a simple cycle of ``g``; otherwise say why not."""
    vs = c.vertices
    if len(vs) < 4 or len(vs) % 2:
        return Validation(False, f"length {len(vs)} is odd or below 4")
    for v in vs:
        if v not in g:
            return Validation(False, f"vertex {v!r} not in graph")
    if len(set(vs)) != len(vs):
        return Validation(False, "repeated vertex")
    for a, b in zip(vs, vs[1:] + vs[:1]):
        if a[0] == b[0]:
            return Validation(False, f"{a!r} and {b!r} on the same side")
        if not g.has_edge(a, b):
            return Validation(False, f"missing edge {a!r}-{b!r}")
    return ACCEPTED


def bfs_distances(g: BipartiteGraph, v: Vertex) -> dict[Vertex, int]:
    """Plain BFS; kept as an independent check on ``kth_neighborhood``."""
    dist = {v: 0}
    q = deque([v])
    while q:
        x = q.popleft()
        for y in g.neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


# -- edge-list I/O ------------------------------------------------------


def parse_edge_list(text: str) -> BipartiteGraph:
    """Parse ``"n m"`` then ``m`` lines ``"u v"`` (Left u, Right v); ``#`` comments."""
    rows: Iterator[tuple[int, str]] = (
        (no, line.split("#", 1)[0].strip())
        for no, line in enumerate(text.split("\n"), start=1)
    )
    rows = [(no, line) for no, line in rows if line]
    if not rows:
        raise GraphError("empty edge list")
    head = rows[0][1].split()
    if len(head) != 2:
        raise GraphError(f"line {rows[0][0]}: header must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphError(f"line {rows[0][0]}: header must be integers") from None
    body = rows[1:]
    if len(body) != m:
        raise GraphError(f"header declares {m} edges, found {len(body)}")
    seen: set[tuple[int, int]] = set()
    for no, line in body:
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {no}: expected 'u v'")
        try:
            e = (int(parts[0]), int(parts[1]))
        except ValueError:
            raise GraphError(f"line {no}: non-integer vertex") from None
        if e in seen:
            raise GraphError(f"line {no}: duplicate edge {e}")
        if not (0 <= e[0] < n and 0 <= e[1] < n):
            raise GraphError(f"line {no}: edge {e} out of range for n={n}")
        seen.add(e)
    return BipartiteGraph(n, seen)


def format_edge_list(g: BipartiteGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path: str | Path) -> BipartiteGraph:
    with open(path, encoding="utf-8", newline="") as f:
        return parse_edge_list(f.read())


def write_edge_list(g: BipartiteGraph, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_edge_list(g))
