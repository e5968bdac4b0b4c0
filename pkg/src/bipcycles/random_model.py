"""Seeded G(n, n, p) sampler and the Chernoff tail used for test tolerances.

RNG: numpy's PCG64 bit generator, seeded through ``SeedSequence``.  The edge
stream is drawn in row-major order (Left index outer, Right index inner), one
uniform double per potential edge; edge ``(u, v)`` is present iff its draw is
``< p``.  PCG64 output and ``Generator.random`` are stable across platforms,
so a given ``(n, p, seed)`` yields the same graph everywhere.

Seed splitting: the child seed for key ``(k1, k2, ...)`` under ``master`` is
the first 64-bit word of ``SeedSequence([master, k1, k2, ...])``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph_core import BipartiteGraph

SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class ModelParams:
    n: int
    p: float
    seed: int = 0
    C: float | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.C is not None:
            if self.C <= 0:
                raise ValueError(f"C must be > 0, got {self.C}")
            expected = self.C * self.n ** (-2.0 / 3.0)
            if abs(self.p - expected) > 1e-12 * max(abs(expected), 1e-300):
                raise ValueError(f"p={self.p} inconsistent with C={self.C} (expected {expected})")

    @classmethod
    def from_C(cls, n: int, C: float, seed: int = 0) -> "ModelParams":
        """``p = C * n^(-2/3)``; raises if that exceeds 1."""
        return cls(n=n, p=C * n ** (-2.0 / 3.0), seed=seed, C=C)

    def with_seed(self, seed: int) -> "ModelParams":
        return ModelParams(self.n, self.p, seed, self.C)


def split_seed(master: int, *keys: int) -> int:
    """Derive an independent 64-bit seed from ``master`` and integer keys."""
    ss = np.random.SeedSequence([int(master) & SEED_MASK, *(int(k) & SEED_MASK for k in keys)])
    return int(ss.generate_state(1, np.uint64)[0])


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed) & SEED_MASK)))


def sample_adjacency(params: ModelParams) -> np.ndarray:
    """Row-major Bernoulli draws; this is the reference sampler."""
    rng = make_rng(params.seed)
    draws = rng.random(params.n * params.n)
    return (draws < params.p).reshape(params.n, params.n)


def sample_gnnp(params: ModelParams) -> BipartiteGraph:
    return BipartiteGraph.from_adjacency(sample_adjacency(params))


def chernoff_tail(eps: float, mean: float) -> float:
    """Upper bound on P(|X - EX| >= eps * EX) for binomial X: 2 exp(-eps^2 EX / 3)."""
    if not 0.0 < eps <= 1.5:
        raise ValueError(f"eps must lie in (0, 3/2], got {eps}")
    if not mean > 0:
        raise ValueError(f"mean must be > 0, got {mean}")
    return 2.0 * math.exp(-eps * eps * mean / 3.0)


def max_degree_bound(params: ModelParams, eps: float) -> int:
    """ceil((1 + eps) n p), the a.a.s. ceiling on the maximum degree."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    # round first so 1e-15 noise cannot push an exact integer up by one
    return math.ceil(round((1.0 + eps) * params.n * params.p, 9))
