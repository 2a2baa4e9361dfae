"""Linear algebra and combinatorics over GF(2) on int bitsets.

A group vector of Z_2^n is a plain ``int`` in ``[0, 2**n)``.  Coordinate ``i``
(1-based) is bit ``i - 1``, so ``e(i, n) == 1 << (i - 1)`` and
``E(i, n) == 2**i - 1``.  Bitstrings are written most significant coordinate
first.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

MAX_DIM = 24


class DimensionError(ValueError):
    """A vector does not live in the expected Z_2^n."""


class NotSpanningError(ValueError):
    """The generators do not span Z_2^n (the Cayley graph is disconnected)."""


def e(i: int, n: int) -> int:
    """Unit vector with a 1 in coordinate ``i`` (1-based)."""
    if not 1 <= i <= n:
        raise IndexError(f"coordinate {i} outside 1..{n}")
    return 1 << (i - 1)


def E(i: int, n: int) -> int:
    """Prefix sum ``e_1 + ... + e_i``."""
    if not 1 <= i <= n:
        raise IndexError(f"coordinate {i} outside 1..{n}")
    return (1 << i) - 1


def to_bitstring(v: int, n: int) -> str:
    return format(v, f"0{n}b") if n else ""


def from_bitstring(s: str, n: int | None = None) -> int:
    s = s.strip()
    if not s or any(ch not in "01" for ch in s):
        raise ValueError(f"not a bitstring: {s!r}")
    if n is not None and len(s) != n:
        raise DimensionError(f"bitstring {s!r} has length {len(s)}, expected {n}")
    return int(s, 2)


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered set of distinct nonzero vectors of Z_2^dim."""

    dim: int
    gens: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.dim <= MAX_DIM:
            raise DimensionError(f"dimension {self.dim} outside 1..{MAX_DIM}")
        object.__setattr__(self, "gens", tuple(int(g) for g in self.gens))
        seen = set()
        for g in self.gens:
            if g == 0:
                raise ValueError("zero vector is not a valid generator")
            if not 0 < g < (1 << self.dim):
                raise DimensionError(f"generator {g} does not fit in {self.dim} bits")
            if g in seen:
                raise ValueError(f"duplicate generator {to_bitstring(g, self.dim)}")
            seen.add(g)

    @property
    def degree(self) -> int:
        return len(self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def index(self, g: int) -> int:
        return self.gens.index(g)


def hypercube_gens(n: int) -> GeneratorSet:
    """Generators ``e_1..e_n`` of the hypercube Q^n."""
    return GeneratorSet(n, tuple(e(i, n) for i in range(1, n + 1)))


def hypercube_plus_gens(n: int) -> GeneratorSet:
    """Generators ``e_1..e_n, E_n`` of Q^n plus the all-ones vector."""
    if n < 2:
        raise ValueError("Q_+^n needs n >= 2 (E_1 coincides with e_1)")
    return GeneratorSet(n, tuple(e(i, n) for i in range(1, n + 1)) + (E(n, n),))


def span_rank(vectors: Iterable[int], dim: int) -> int:
    """GF(2) rank of ``vectors``; the Cayley graph is connected iff this equals ``dim``."""
    basis: dict[int, int] = {}  # leading bit -> basis vector
    for v in vectors:
        v = int(v)
        if v < 0 or v >> dim:
            raise DimensionError(f"vector {v} does not fit in {dim} bits")
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def is_sidon(S: GeneratorSet | Sequence[int]) -> bool:
    """True iff all sums of unordered pairs of distinct elements are distinct."""
    gens = list(S)
    sums: set[int] = set()
    for a, b in combinations(gens, 2):
        s = a ^ b
        if s in sums:
            return False
        sums.add(s)
    return True


def zero_sum_obstruction_cycle(S: GeneratorSet) -> list[int] | None:
    """Lexicographically first (by generator index) zero-sum subset of size 2 or 3 mod 4.

    Zero-sum subsets are exactly the kernel of ``x -> XOR of selected gens``,
    so the search walks that kernel (``2**(d - rank)`` elements) instead of all
    ``2**d`` subsets.
    """
    gens = S.gens
    d = len(gens)
    if d > MAX_DIM:
        raise ValueError(f"at most {MAX_DIM} generators supported")
    kernel = _kernel_basis(gens)
    best: tuple[int, ...] | None = None
    # Gray-code walk over the kernel.
    mask = 0
    for step in range(1, 1 << len(kernel)):
        mask ^= kernel[(step & -step).bit_length() - 1]
        if mask.bit_count() % 4 in (2, 3):
            idx = tuple(i for i in range(d) if mask >> i & 1)
            if best is None or idx < best:
                best = idx
    if best is None:
        return None
    return [gens[i] for i in best]


def _kernel_basis(gens: Sequence[int]) -> list[int]:
    """Basis (as index masks) of the subsets of ``gens`` with zero XOR."""
    pivots: dict[int, tuple[int, int]] = {}  # leading bit -> (vector, index mask)
    kernel = []
    for i, g in enumerate(gens):
        v, combo = g, 1 << i
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = (v, combo)
                break
            pv, pc = pivots[top]
            v ^= pv
            combo ^= pc
        if v == 0:
            kernel.append(combo)
    return kernel


# Primitive polynomials over GF(2), bit k = coefficient of x^k.
PRIMITIVE_POLYNOMIALS = {
    2: 0b111,  # x^2 + x + 1
    3: 0b1011,  # x^3 + x + 1
    4: 0b10011,  # x^4 + x + 1
    5: 0b100101,  # x^5 + x^2 + 1
    6: 0b1000011,  # x^6 + x + 1
    7: 0b10000011,  # x^7 + x + 1
    8: 0b100011101,  # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,  # x^9 + x^4 + 1
    10: 0b10000001001,  # x^10 + x^3 + 1
    11: 0b100000000101,  # x^11 + x^2 + 1
    12: 0b1000001010011,  # x^12 + x^6 + x^4 + x + 1
}


def gf_mul(a: int, b: int, m: int) -> int:
    """Multiply in GF(2^m) modulo the tabulated primitive polynomial."""
    poly = PRIMITIVE_POLYNOMIALS[m]
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= poly
    return out


def bch_sidon_set(m: int) -> GeneratorSet:
    """Columns ``(x, x^3)`` of a double-error-correcting BCH parity check matrix.

    Each nonzero ``x`` in GF(2^m) gives the 2m-bit vector ``x << m | x**3``.
    The column for ``x = 0`` is the zero vector and is dropped, so the set has
    ``2**m - 1`` elements.  Distinct pairs have distinct sums because
    ``x + y`` and ``x^3 + y^3`` determine ``xy``.
    """
    if not 2 <= m <= 12:
        raise ValueError(f"m={m} outside supported range 2..12")
    gens = []
    for x in range(1, 1 << m):
        cube = gf_mul(gf_mul(x, x, m), x, m)
        gens.append(x << m | cube)
    return GeneratorSet(2 * m, tuple(gens))


@dataclass(frozen=True)
class LinearMap:
    """Linear map Z_2^domain_dim -> Z_2^codomain_dim given by column images."""

    domain_dim: int
    codomain_dim: int
    columns: tuple[int, ...]

    def __call__(self, x: int) -> int:
        out = 0
        i = 0
        while x:
            if x & 1:
                out ^= self.columns[i]
            x >>= 1
            i += 1
        return out

    def image_table(self) -> np.ndarray:
        """``T(x)`` for every ``x`` in the domain, indexed by ``x``."""
        table = np.zeros(1 << self.domain_dim, dtype=np.int64)
        for i, col in enumerate(self.columns):
            half = 1 << i
            table[half : 2 * half] = table[:half] ^ col
        return table

    @property
    def is_surjective(self) -> bool:
        return span_rank(self.columns, self.codomain_dim) == self.codomain_dim

    @property
    def fiber_size(self) -> int:
        if not self.is_surjective:
            raise NotSpanningError("map is not onto; fibers are uneven")
        return 1 << (self.domain_dim - self.codomain_dim)


def hypercube_lift(S: GeneratorSet) -> LinearMap:
    """The map from Q^d onto Gamma(Z_2^n, S) sending ``e_i`` to the i-th generator."""
    if span_rank(S.gens, S.dim) != S.dim:
        raise NotSpanningError("generators do not span Z_2^n; graph is not connected")
    return LinearMap(len(S.gens), S.dim, S.gens)


def preimage(T: LinearMap, U: np.ndarray) -> np.ndarray:
    """Bitmap over Z_2^d of ``T^{-1}(U)`` for a bitmap ``U`` over Z_2^n."""
    U = np.asarray(U, dtype=bool)
    if U.shape != (1 << T.codomain_dim,):
        raise DimensionError(f"vertex bitmap must have length {1 << T.codomain_dim}")
    return U[T.image_table()]
