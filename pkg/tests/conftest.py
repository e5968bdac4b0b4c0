import numpy as np
import pytest
from hypothesis import strategies as st

from bipcycles.graph_core import BipartiteGraph, L, R


def cycle_graph(k: int) -> BipartiteGraph:
    """C_{2k}: L0 R0 L1 R1 ... L(k-1) R(k-1) back to L0."""
    edges = [(i, i) for i in range(k)] + [((i + 1) % k, i) for i in range(k)]
    return BipartiteGraph(k, edges)


def star_graph(leaves: int) -> BipartiteGraph:
    """K_{1,leaves}: centre L0, leaves R0..R(leaves-1); other Left vertices isolated."""
    return BipartiteGraph(leaves, [(0, j) for j in range(leaves)])


def path_graph_l0_r0_l1() -> BipartiteGraph:
    return BipartiteGraph(2, [(0, 0), (1, 0)])


@st.composite
def small_graphs(draw, max_n: int = 6, min_n: int = 1):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    return BipartiteGraph(n, [(i // n, i % n) for i, b in enumerate(bits) if b])


def random_graph(rng: np.random.Generator, n: int, p: float) -> BipartiteGraph:
    return BipartiteGraph.from_adjacency(rng.random((n, n)) < p)


@pytest.fixture
def k22():
    return BipartiteGraph.complete(2)


@pytest.fixture
def k33():
    return BipartiteGraph.complete(3)


__all__ = ["L", "R"]
