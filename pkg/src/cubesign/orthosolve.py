"""Deciding orthogonal (real +-1) signings of Sidon cubelike graphs.

When every two vertices with a common neighbor have exactly two, a +-1 signing
has orthogonal rows iff every 4-cycle carries an odd number of -1 entries.
Labelling an edge 1 when its entry is -1 turns this into a GF(2) system with
one equation ``f(e1) + f(e2) + f(e3) + f(e4) = 1`` per 4-cycle.  Either the
system has a solution (a signing), or an odd set of its rows sums to zero, and
that set of 4-cycles is a parity certificate that no signing exists.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .cayley import CubelikeGraph, Edge, FourCycle, NotSidonError, common_neighbor_check, four_cycles
from .gf2 import GeneratorSet, hypercube_plus_gens, is_sidon, to_bitstring
from .pauli import ABSENT, SigningMatrix


class LemmaInapplicableError(ValueError):
    """Graph lacks the exactly-two-common-neighbors property the reduction needs."""


class LabellingError(ValueError):
    """An edge labelling violates some 4-cycle equation."""


@dataclass(frozen=True)
class CycleSystem:
    graph: CubelikeGraph
    edges: tuple[Edge, ...]
    cycles: tuple[FourCycle, ...]
    rows: tuple[tuple[int, int, int, int], ...]  # edge-variable indices; every RHS is 1

    @property
    def num_vars(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class EdgeLabelling:
    """Bit per edge; key ``(u, s)`` is the edge ``{u, u ^ s}`` with ``u < u ^ s``."""

    bits: Mapping[Edge, int]

    def __getitem__(self, edge: Edge) -> int:
        return self.bits[edge]

    def cycle_sum(self, c: FourCycle) -> int:
        return sum(self.bits[e] for e in c.edges) % 2


@dataclass(frozen=True)
class ParityCertificate:
    """An odd family of distinct 4-cycles using every edge an even number of times."""

    cycles: tuple[FourCycle, ...]

    def __len__(self) -> int:
        return len(self.cycles)

    def edge_usage(self) -> Counter:
        return Counter(e for c in self.cycles for e in c.edges)


def check_applicable(G: CubelikeGraph) -> None:
    if not is_sidon(G.S):
        raise LemmaInapplicableError("generating set is not Sidon; 4-cycle reduction inapplicable")
    if not common_neighbor_check(G):  # pragma: no cover - equivalent to the Sidon test
        raise LemmaInapplicableError("some pair of vertices has a common-neighbor count other than 0 or 2")


def build_system(G: CubelikeGraph) -> CycleSystem:
    check_applicable(G)
    edges = tuple(G.edges())
    index = {e: i for i, e in enumerate(edges)}
    cycles = tuple(four_cycles(G))
    rows = tuple(tuple(index[e] for e in c.edges) for c in cycles)
    return CycleSystem(G, edges, cycles, rows)


def _pack_rows(rows: Sequence[Sequence[int]], width: int) -> np.ndarray:
    words = (width + 63) // 64
    A = np.zeros((len(rows), words), dtype=np.uint64)
    for r, cols in enumerate(rows):
        for c in cols:
            A[r, c >> 6] ^= np.uint64(1) << np.uint64(c & 63)
    return A


def _row_int(row: np.ndarray) -> int:
    return int.from_bytes(row.tobytes(), "little")


def solve(system: CycleSystem) -> EdgeLabelling | ParityCertificate:
    """Gaussian elimination over GF(2) with row-combination bookkeeping.

    Columns are laid out as ``[edge variables | RHS | one bit per original row]``.
    A row reduced to ``0 = 1`` names, in its bookkeeping bits, the original
    cycles that sum to it; their count is odd because each contributes RHS 1.
    """
    nv, m = system.num_vars, len(system.rows)
    rhs_col = nv
    width = nv + 1 + m
    A = _pack_rows([list(r) + [rhs_col, nv + 1 + i] for i, r in enumerate(system.rows)], width)

    pivots: list[int] = []
    rank = 0
    for c in range(nv):
        if rank == m:
            break
        w, b = c >> 6, np.uint64(1) << np.uint64(c & 63)
        hits = np.flatnonzero(A[rank:, w] & b)
        if hits.size == 0:
            continue
        p = rank + int(hits[0])
        if p != rank:
            A[[rank, p]] = A[[p, rank]]
        below = rank + hits[1:]
        if below.size:
            A[below, w:] ^= A[rank, w:]
        pivots.append(c)
        rank += 1

    var_mask = (1 << nv) - 1
    rhs_bit = 1 << rhs_col
    inconsistent = []
    for r in range(rank, m):
        row = _row_int(A[r])
        if row & rhs_bit:
            inconsistent.append(row >> (nv + 1))
    if inconsistent:
        combo = min(inconsistent, key=int.bit_count)
        cycles = tuple(system.cycles[i] for i in range(m) if combo >> i & 1)
        return ParityCertificate(cycles)

    # back substitution; free variables are 0
    x = 0
    for r in range(rank - 1, -1, -1):
        row = _row_int(A[r])
        bit = (row >> rhs_col & 1) ^ ((row & var_mask & x).bit_count() & 1)
        if bit:
            x |= 1 << pivots[r]
    labelling = EdgeLabelling({e: x >> i & 1 for i, e in enumerate(system.edges)})
    bad = [c for c in system.cycles if labelling.cycle_sum(c) != 1]
    if bad:  # pragma: no cover - elimination bug guard
        raise AssertionError(f"solver produced a labelling violating {bad[0]}")
    return labelling


def decide_orthogonal(G: CubelikeGraph) -> EdgeLabelling | ParityCertificate:
    return solve(build_system(G))


def labelling_to_signing(G: CubelikeGraph, f: EdgeLabelling) -> SigningMatrix:
    """+-1 signing with entry -1 exactly on edges labelled 1."""
    check_applicable(G)
    for c in four_cycles(G):
        if f.cycle_sum(c) != 1:
            verts = ",".join(to_bitstring(v, G.n) for v in c.vertices)
            raise LabellingError(f"4-cycle ({verts}) has an even number of edges labelled 1")
    phases = {}
    for s in G.gens:
        phases[s] = np.array([2 * f[(min(u, u ^ s), s)] for u in range(G.order)], dtype=np.int8)
    return SigningMatrix(G.n, phases)


def signing_to_labelling(G: CubelikeGraph, M: SigningMatrix) -> EdgeLabelling:
    bits = {}
    for u, s in G.edges():
        entry = M.entry(u, u ^ s)
        if entry is None or entry % 2:
            raise ValueError(f"edge ({u}, {u ^ s}) is not a real +-1 entry")
        bits[(u, s)] = int(entry) // 2
    return EdgeLabelling(bits)


def verify_certificate(G: CubelikeGraph, cert: ParityCertificate) -> bool:
    """True iff the family is odd, duplicate-free, and uses every edge evenly.

    A true result proves that ``G`` has no orthogonal signing: adding the
    cycle equations gives 0 on the left and 1 on the right.
    """
    for c in cert.cycles:
        if c.s not in G.gens or c.t not in G.gens or c.s == c.t or not 0 <= c.v < G.order:
            raise ValueError(f"{c} is not a 4-cycle of the graph")
    if len(set(cert.cycles)) != len(cert.cycles):
        return False
    if len(cert.cycles) % 2 == 0:
        return False
    return all(count % 2 == 0 for count in cert.edge_usage().values())


def _staircase_cycles(cycle_gens: Sequence[int]) -> list[FourCycle]:
    """Images of the unit squares of the staircase lattice for a zero-sum generator cycle.

    With prefix sums ``P_j = g_1 + ... + g_j`` (so ``P_0 = P_k = 0``), lattice
    point ``(x, y)`` goes to ``P_x + P_{k-y}``.  Horizontal steps from column x
    add ``g_{x+1}``, vertical steps from row y add ``g_{k-y}``.
    """
    k = len(cycle_gens)
    prefix = [0]
    for g in cycle_gens:
        prefix.append(prefix[-1] ^ g)
    out = []
    for x in range(k - 1):
        for y in range(k - 1 - x):
            base = prefix[x] ^ prefix[k - y]
            out.append(FourCycle.canonical(base, cycle_gens[x], cycle_gens[k - y - 1]))
    return out


def staircase_point(cycle_gens: Sequence[int], x: int, y: int) -> int:
    """Vertex assigned to lattice point ``(x, y)`` by the staircase map."""
    k = len(cycle_gens)
    if not (0 <= x <= k - 1 and 0 <= y <= k - 1 and x + y <= k):
        raise ValueError(f"({x}, {y}) is not a staircase lattice point")
    acc = 0
    for g in cycle_gens[:x]:
        acc ^= g
    for g in cycle_gens[: k - y]:
        acc ^= g
    return acc


def staircase_certificate(n: int) -> ParityCertificate:
    """n(n+1)/2 four-cycles of Q_+^n using every edge twice, for n = 1, 2 (mod 4)."""
    if n < 2:
        raise ValueError("need n >= 2")
    if n % 4 not in (1, 2):
        raise ValueError(f"n={n}: staircase has n(n+1)/2 = {n * (n + 1) // 2} cycles, even; not an obstruction")
    S = hypercube_plus_gens(n)
    return ParityCertificate(tuple(_staircase_cycles(S.gens)))


def generator_cycle_certificate(S: GeneratorSet, cycle: Sequence[int]) -> ParityCertificate:
    """Staircase certificate built from distinct generators summing to zero, k = 2, 3 (mod 4)."""
    cycle = [int(g) for g in cycle]
    k = len(cycle)
    if len(set(cycle)) != k or any(g not in S.gens for g in cycle):
        raise ValueError("cycle must consist of distinct generators from S")
    acc = 0
    for g in cycle:
        acc ^= g
    if acc:
        raise ValueError("cycle generators do not sum to zero")
    if k % 4 not in (2, 3):
        raise ValueError(f"cycle length {k} is 0 or 1 mod 4; the staircase family would be even")
    if not is_sidon(S):
        raise NotSidonError("certificate reasoning needs a Sidon generating set")
    return ParityCertificate(tuple(_staircase_cycles(cycle)))


def brute_force_orthogonal(G: CubelikeGraph, gauge: bool = True) -> bool:
    """Exhaustive search for a +-1 signing with ``M M^T = d I``, independent of the GF(2) route.

    With ``gauge=True`` the edges of a spanning forest are fixed to +1: any
    signing can be brought to that form by negating rows and columns together,
    which preserves orthogonality.  ``gauge=False`` tries all ``2^|E|`` signings.
    """
    N, d = G.order, G.degree
    edges = G.edges()
    fixed: set[Edge] = set()
    if gauge:
        seen = np.zeros(N, dtype=bool)
        for root in range(N):
            if seen[root]:
                continue
            seen[root] = True
            stack = [root]
            while stack:
                u = stack.pop()
                for s in G.gens:
                    v = u ^ s
                    if not seen[v]:
                        seen[v] = True
                        fixed.add((min(u, v), s))
                        stack.append(v)
    free = [e for e in edges if e not in fixed]
    if len(free) > 24:
        raise ValueError(f"{len(free)} free edges; exhaustive search too large")
    base = np.zeros((N, N), dtype=np.int64)
    for u, s in fixed:
        base[u, u ^ s] = base[u ^ s, u] = 1
    identity = d * np.eye(N, dtype=np.int64)
    chunk = 1 << min(len(free), 12)
    for start in range(0, 1 << len(free), chunk):
        masks = np.arange(start, start + chunk, dtype=np.int64)
        batch = np.broadcast_to(base, (chunk, N, N)).copy()
        for j, (u, s) in enumerate(free):
            sign = 1 - 2 * ((masks >> j) & 1)
            batch[:, u, u ^ s] = sign
            batch[:, u ^ s, u] = sign
        prod = batch @ batch.transpose(0, 2, 1)
        if np.any(np.all(prod == identity, axis=(1, 2))):
            return True
    return False


__all__ = [
    "CycleSystem",
    "EdgeLabelling",
    "LabellingError",
    "LemmaInapplicableError",
    "ParityCertificate",
    "brute_force_orthogonal",
    "build_system",
    "decide_orthogonal",
    "generator_cycle_certificate",
    "labelling_to_signing",
    "signing_to_labelling",
    "solve",
    "staircase_certificate",
    "staircase_point",
    "verify_certificate",
]
