"""Cubelike graphs: Cayley graphs of Z_2^n with vertex sets as boolean bitmaps."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .gf2 import GeneratorSet, hypercube_gens, hypercube_plus_gens, is_sidon, span_rank

Edge = tuple[int, int]  # (smaller endpoint u, generator s); the edge {u, u ^ s}


class NotSidonError(ValueError):
    """The generating set is not a Sidon set."""


@dataclass(frozen=True)
class CubelikeGraph:
    S: GeneratorSet

    @property
    def n(self) -> int:
        return self.S.dim

    @property
    def gens(self) -> tuple[int, ...]:
        return self.S.gens

    @property
    def degree(self) -> int:
        return len(self.S.gens)

    @property
    def order(self) -> int:
        return 1 << self.S.dim

    @property
    def num_edges(self) -> int:
        return self.degree * self.order // 2

    @property
    def is_connected(self) -> bool:
        return span_rank(self.gens, self.n) == self.n

    def vertices(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def edges(self) -> list[Edge]:
        """All edges ordered by (smaller endpoint, generator index)."""
        return [(u, s) for u in range(self.order) for s in self.gens if u < u ^ s]

    def has_edge(self, u: int, v: int) -> bool:
        return (u ^ v) in self.gens and 0 <= u < self.order and 0 <= v < self.order

    @classmethod
    def from_gens(cls, n: int, gens: Iterable[int]) -> "CubelikeGraph":
        return cls(GeneratorSet(n, tuple(gens)))


def hypercube(n: int) -> CubelikeGraph:
    return CubelikeGraph(hypercube_gens(n))


def hypercube_plus(n: int) -> CubelikeGraph:
    return CubelikeGraph(hypercube_plus_gens(n))


def as_bitmap(G: CubelikeGraph, U) -> np.ndarray:
    """Coerce a vertex collection (bitmap or iterable of ints) to a boolean bitmap."""
    arr = np.asarray(U)
    if arr.dtype == bool:
        if arr.shape != (G.order,):
            raise ValueError(f"bitmap must have length {G.order}")
        return arr
    bitmap = np.zeros(G.order, dtype=bool)
    idx = np.asarray(list(U) if not isinstance(U, np.ndarray) else U, dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= G.order):
        raise ValueError("vertex outside Z_2^n")
    bitmap[idx] = True
    return bitmap


def neighbors(G: CubelikeGraph, v: int) -> list[int]:
    if not 0 <= v < G.order:
        raise ValueError(f"vertex {v} outside Z_2^{G.n}")
    return [v ^ s for s in G.gens]


def induced_degrees(G: CubelikeGraph, U) -> np.ndarray:
    """Degree inside ``U`` of every vertex (zero outside ``U``)."""
    inside = as_bitmap(G, U)
    verts = G.vertices()
    deg = np.zeros(G.order, dtype=np.int64)
    for s in G.gens:
        deg += inside & inside[verts ^ s]
    return deg


def induced_max_degree(G: CubelikeGraph, U) -> int:
    inside = as_bitmap(G, U)
    if not inside.any():
        raise ValueError("vertex set is empty")
    return int(induced_degrees(G, inside).max())


def cut_size(G: CubelikeGraph, U) -> int:
    """Number of edges with exactly one endpoint in ``U``."""
    inside = as_bitmap(G, U)
    verts = G.vertices()
    return int(sum(np.count_nonzero(inside & ~inside[verts ^ s]) for s in G.gens))


@dataclass(frozen=True, order=True)
class FourCycle:
    """The 4-cycle ``(v, v^s, v^s^t, v^t)`` with ``v`` the smallest vertex and ``s < t``."""

    v: int
    s: int
    t: int

    @classmethod
    def canonical(cls, v: int, s: int, t: int) -> "FourCycle":
        if s == t:
            raise ValueError("a 4-cycle needs two distinct generators")
        if s > t:
            s, t = t, s
        return cls(min(v, v ^ s, v ^ t, v ^ s ^ t), s, t)

    @classmethod
    def from_vertices(cls, a: int, b: int, c: int, d: int) -> "FourCycle":
        """Build from four vertices listed in cyclic order."""
        s, t = a ^ b, b ^ c
        if len({a, b, c, d}) != 4 or d ^ a != t or c ^ d != s:
            raise ValueError(f"{(a, b, c, d)} is not a translate of a generator square")
        return cls.canonical(a, s, t)

    @property
    def vertices(self) -> tuple[int, int, int, int]:
        v, s, t = self.v, self.s, self.t
        return (v, v ^ s, v ^ s ^ t, v ^ t)

    @property
    def edges(self) -> tuple[Edge, Edge, Edge, Edge]:
        v, s, t = self.v, self.s, self.t
        return (
            (min(v, v ^ s), s),
            (min(v ^ s, v ^ s ^ t), t),
            (min(v ^ t, v ^ s ^ t), s),
            (min(v, v ^ t), t),
        )


def four_cycles(G: CubelikeGraph) -> list[FourCycle]:
    """Every 4-cycle once, sorted.  For a Sidon set there are C(d,2) * 2^(n-2) of them."""
    if not is_sidon(G.S):
        raise NotSidonError("4-cycle enumeration requires a Sidon generating set")
    cycles = set()
    for s, t in combinations(G.gens, 2):
        coset_reps = set()
        for v in range(G.order):
            rep = min(v, v ^ s, v ^ t, v ^ s ^ t)
            if rep not in coset_reps:
                coset_reps.add(rep)
                cycles.add(FourCycle.canonical(rep, s, t))
    return sorted(cycles)


def common_neighbor_check(G: CubelikeGraph) -> bool:
    """Whether any two vertices with a common neighbor have exactly two of them."""
    for u in range(G.order):
        walks = Counter(u ^ s ^ t for s in G.gens for t in G.gens if s != t)
        if any(count != 2 for count in walks.values()):
            return False
    return True


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    # Counter-based stream per (seed, trial): results do not depend on trial order.
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(trial,))))


def sampled_maxdeg_bound(G: CubelikeGraph, subset_size: int, trials: int, seed: int) -> int:
    """Smallest induced max degree seen over ``trials`` uniform subsets of ``subset_size`` vertices.

    Trials are drawn in fixed-size blocks; block ``b`` uses the stream for
    ``(seed, b)``, so trial ``t`` depends only on ``seed``, ``t`` and ``N`` and
    blocks can be computed independently.  A subset is the set of positions
    holding the ``subset_size`` smallest of ``N`` uniform keys.
    """
    if not G.order // 2 < subset_size <= G.order:
        raise ValueError(f"subset size must lie in ({G.order // 2}, {G.order}]")
    if trials < 1:
        raise ValueError("need at least one trial")
    N = G.order
    verts = G.vertices()
    dense = N <= 1024
    if dense:
        # small integer counts are exact in float32, and the product runs in BLAS
        A = np.zeros((N, N), dtype=np.float32)
        for s in G.gens:
            A[verts, verts ^ s] = 1
    block = max(1, min(1024, (1 << 22) // N))
    best = None
    for b, start in enumerate(range(0, trials, block)):
        rows = min(block, trials - start)
        keys = _trial_rng(seed, b).random((block, N))[:rows]
        kth = np.partition(keys, subset_size - 1, axis=1)[:, subset_size - 1 : subset_size]
        inside = keys <= kth
        if dense:
            deg = inside.astype(np.float32) @ A
        else:
            deg = np.zeros((rows, N), dtype=np.int64)
            for s in G.gens:
                deg += inside[:, verts ^ s]
        worst = int(np.where(inside, deg, -1).max(axis=1).min())
        best = worst if best is None else min(best, worst)
    return best


def exhaustive_maxdeg_bound(G: CubelikeGraph, subset_size: int) -> int:
    """Exact minimum of the induced max degree over all subsets of the given size."""
    if not G.order // 2 < subset_size <= G.order:
        raise ValueError(f"subset size must lie in ({G.order // 2}, {G.order}]")
    if math.comb(G.order, subset_size) > 200_000:
        raise ValueError("too many subsets for exhaustive enumeration")
    return min(induced_max_degree(G, list(U)) for U in combinations(range(G.order), subset_size))


def sqrt_degree_ceil(G: CubelikeGraph) -> int:
    """Integer lower bound implied by Delta >= sqrt(d): ceil(sqrt(d))."""
    return math.isqrt(G.degree - 1) + 1 if G.degree else 0


__all__ = [
    "CubelikeGraph",
    "Edge",
    "FourCycle",
    "NotSidonError",
    "as_bitmap",
    "common_neighbor_check",
    "cut_size",
    "exhaustive_maxdeg_bound",
    "four_cycles",
    "hypercube",
    "hypercube_plus",
    "induced_degrees",
    "induced_max_degree",
    "neighbors",
    "sampled_maxdeg_bound",
    "sqrt_degree_ceil",
]
