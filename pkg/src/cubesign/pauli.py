"""Pauli words, unitary signings of cubelike graphs, and their verification.

A signing matrix of a graph on Z_2^n is stored by offset: every entry ``(u, v)``
lives at offset ``s = u ^ v``, and for each offset we keep an ``int8`` array
``P[s][u]`` holding the exponent ``k`` of the entry ``i**k`` (``-1`` means no
entry).  All signings built here have entries in ``{1, i, -1, -i}``, so every
product and sum that the verifier forms is an exact Gaussian integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .cayley import CubelikeGraph
from .gf2 import DimensionError, GeneratorSet, is_sidon, to_bitstring

ABSENT = -1
_RE = np.array([1, 0, -1, 0], dtype=np.int64)
_IM = np.array([0, 1, 0, -1], dtype=np.int64)


class CommutingPairError(ValueError):
    """Two words in a family commute, so their sum is not a signing."""


class UnsupportedShapeError(ValueError):
    """Generating set is not of the e_i / E_i form handled by the construction."""


class NotASigningError(ValueError):
    """An input that must be a verified unitary signing is not one."""


class Unit(IntEnum):
    """A fourth root of unity ``i**k``."""

    ONE = 0
    I = 1  # noqa: E741
    MINUS_ONE = 2
    MINUS_I = 3

    def times(self, other: "Unit") -> "Unit":
        return Unit((self + other) % 4)

    def conj(self) -> "Unit":
        return Unit(-self % 4)

    @property
    def gaussian(self) -> tuple[int, int]:
        return int(_RE[self]), int(_IM[self])

    def __str__(self) -> str:
        return _UNIT_TEXT[self]

    @classmethod
    def parse(cls, text: str) -> "Unit":
        try:
            return _TEXT_UNIT[text.strip()]
        except KeyError:
            raise ValueError(f"entry must be one of +1, -1, +i, -i; got {text!r}") from None


_UNIT_TEXT = {Unit.ONE: "+1", Unit.I: "+i", Unit.MINUS_ONE: "-1", Unit.MINUS_I: "-i"}
_TEXT_UNIT = {v: k for k, v in _UNIT_TEXT.items()} | {"1": Unit.ONE, "i": Unit.I}


class Pauli(IntEnum):
    I2 = 0
    R0 = 1  # diag(1, -1)
    R1 = 2  # antidiag(1, 1)
    R2 = 3  # [[0, i], [-i, 0]]

    @property
    def flips(self) -> bool:
        """Whether the symbol swaps the two basis states (off-diagonal)."""
        return self in (Pauli.R1, Pauli.R2)

    def anticommutes(self, other: "Pauli") -> bool:
        return self != other and self != Pauli.I2 and other != Pauli.I2

    def matrix(self) -> np.ndarray:
        return _PAULI_MATRICES[self].copy()


_PAULI_MATRICES = {
    Pauli.I2: np.array([[1, 0], [0, 1]], dtype=complex),
    Pauli.R0: np.array([[1, 0], [0, -1]], dtype=complex),
    Pauli.R1: np.array([[0, 1], [1, 0]], dtype=complex),
    Pauli.R2: np.array([[0, 1j], [-1j, 0]], dtype=complex),
}


@dataclass(frozen=True)
class PauliWord:
    """Kronecker product ``A_n (x) ... (x) A_1``; ``symbols[0]`` is position n."""

    symbols: tuple[Pauli, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(Pauli(s) for s in self.symbols))
        if not self.symbols:
            raise ValueError("empty Pauli word")

    @property
    def n(self) -> int:
        return len(self.symbols)

    def at(self, position: int) -> Pauli:
        """Symbol at Kronecker position ``position`` (1-based, counted from the right)."""
        return self.symbols[self.n - position]

    @property
    def generator(self) -> int:
        """The group element whose perfect matching this word signs."""
        g = 0
        for pos in range(1, self.n + 1):
            if self.at(pos).flips:
                g |= 1 << (pos - 1)
        return g

    @classmethod
    def parse(cls, text: str) -> "PauliWord":
        return cls(tuple(Pauli[tok] for tok in text.replace("⊗", " ").split()))

    def __str__(self) -> str:
        return " ".join(s.name for s in self.symbols)


def words_anticommute(A: PauliWord, B: PauliWord) -> bool:
    """Two Kronecker words anticommute iff an odd number of positions anticommute."""
    if A.n != B.n:
        raise DimensionError(f"word lengths differ: {A.n} vs {B.n}")
    return sum(a.anticommutes(b) for a, b in zip(A.symbols, B.symbols)) % 2 == 1


def edge_signing_e(i: int, n: int) -> PauliWord:
    """R0 above position i, R1 at i, I2 below: signs the unit vector e_i."""
    if not 1 <= i <= n:
        raise IndexError(f"index {i} outside 1..{n}")
    syms = []
    for pos in range(n, 0, -1):
        syms.append(Pauli.R0 if pos > i else Pauli.R1 if pos == i else Pauli.I2)
    return PauliWord(tuple(syms))


def edge_signing_E(i: int, n: int) -> PauliWord:
    """R0 above position i, then alternating R2/R1 down to position 1 (R2 at i)."""
    if not 2 <= i <= n:
        raise IndexError(f"index {i} outside 2..{n}")
    syms = []
    for pos in range(n, 0, -1):
        if pos > i:
            syms.append(Pauli.R0)
        else:
            syms.append(Pauli.R1 if (i - pos) % 2 else Pauli.R2)
    return PauliWord(tuple(syms))


@dataclass(frozen=True, eq=False)
class SigningMatrix:
    """Sparse 2^n x 2^n matrix with fourth-root-of-unity entries, keyed by offset."""

    n: int
    phases: Mapping[int, np.ndarray] = field(repr=False)

    def __post_init__(self) -> None:
        N = 1 << self.n
        clean = {}
        for s, arr in self.phases.items():
            arr = np.asarray(arr, dtype=np.int8)
            if arr.shape != (N,):
                raise DimensionError(f"phase array for offset {s} must have length {N}")
            if not 0 <= s < N:
                raise DimensionError(f"offset {s} outside Z_2^{self.n}")
            if np.any((arr < ABSENT) | (arr > 3)):
                raise ValueError("phase exponents must lie in {-1, 0, 1, 2, 3}")
            if np.any(arr != ABSENT):
                arr = arr.copy()
                arr.flags.writeable = False
                clean[int(s)] = arr
        object.__setattr__(self, "phases", dict(sorted(clean.items())))

    @property
    def order(self) -> int:
        return 1 << self.n

    @property
    def offsets(self) -> tuple[int, ...]:
        return tuple(self.phases)

    def entry(self, u: int, v: int) -> Unit | None:
        arr = self.phases.get(u ^ v)
        if arr is None or arr[u] == ABSENT:
            return None
        return Unit(int(arr[u]))

    def entries(self) -> dict[tuple[int, int], Unit]:
        out = {}
        for s, arr in self.phases.items():
            for u in np.flatnonzero(arr != ABSENT):
                out[(int(u), int(u) ^ s)] = Unit(int(arr[u]))
        return out

    @property
    def nnz(self) -> int:
        return sum(int(np.count_nonzero(a != ABSENT)) for a in self.phases.values())

    @property
    def is_real(self) -> bool:
        return all(np.all((a == ABSENT) | (a % 2 == 0)) for a in self.phases.values())

    @property
    def trace(self) -> tuple[int, int]:
        diag = self.phases.get(0)
        if diag is None:
            return (0, 0)
        present = diag != ABSENT
        k = diag[present].astype(np.int64)
        return int(_RE[k].sum()), int(_IM[k].sum())

    def to_dense(self) -> np.ndarray:
        """Dense complex copy, for cross-checks at small n."""
        N = self.order
        M = np.zeros((N, N), dtype=complex)
        verts = np.arange(N)
        for s, arr in self.phases.items():
            present = arr != ABSENT
            u = verts[present]
            M[u, u ^ s] = (1j) ** arr[present].astype(np.int64)
        return M

    def with_entry(self, u: int, v: int, value: Unit | None) -> "SigningMatrix":
        """Copy with a single ordered entry replaced (``None`` deletes it)."""
        phases = {s: a.copy() for s, a in self.phases.items()}
        s = u ^ v
        arr = phases.setdefault(s, np.full(self.order, ABSENT, dtype=np.int8))
        arr[u] = ABSENT if value is None else int(value)
        return SigningMatrix(self.n, phases)

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[tuple[int, int], Unit | int]) -> "SigningMatrix":
        N = 1 << n
        phases: dict[int, np.ndarray] = {}
        for (u, v), val in entries.items():
            if not (0 <= u < N and 0 <= v < N):
                raise DimensionError(f"entry ({u}, {v}) outside a {N}x{N} matrix")
            arr = phases.setdefault(u ^ v, np.full(N, ABSENT, dtype=np.int8))
            arr[u] = int(val) % 4
        return cls(n, phases)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SigningMatrix):
            return NotImplemented
        return (
            self.n == other.n
            and self.offsets == other.offsets
            and all(np.array_equal(self.phases[s], other.phases[s]) for s in self.offsets)
        )

    __hash__ = None  # type: ignore[assignment]


def word_to_matrix(w: PauliWord) -> SigningMatrix:
    """The signed perfect matching represented by a Pauli word."""
    g = w.generator
    if g == 0:
        raise ValueError(f"word {w} is diagonal; it does not sign any edge")
    u = np.arange(1 << w.n, dtype=np.int64)
    phase = np.zeros(u.shape, dtype=np.int64)
    for pos in range(1, w.n + 1):
        bit = (u >> (pos - 1)) & 1
        sym = w.at(pos)
        if sym == Pauli.R0:
            phase += 2 * bit
        elif sym == Pauli.R2:
            # row 0 carries +i, row 1 carries -i
            phase += 1 + 2 * bit
    return SigningMatrix(w.n, {g: phase % 4})


def signing_from_family(words: Sequence[PauliWord]) -> SigningMatrix:
    """Sum of a pairwise anticommuting family of edge signings."""
    if not words:
        raise ValueError("empty family")
    n = words[0].n
    seen: dict[int, PauliWord] = {}
    for w in words:
        if w.n != n:
            raise DimensionError("all words must have the same length")
        g = w.generator
        if g == 0:
            raise ValueError(f"word {w} signs no edge")
        if g in seen:
            raise ValueError(f"words {seen[g]} and {w} sign the same generator {to_bitstring(g, n)}")
        seen[g] = w
    for a, b in combinations(words, 2):
        if not words_anticommute(a, b):
            raise CommutingPairError(f"{a} and {b} commute")
    phases: dict[int, np.ndarray] = {}
    for w in words:
        phases.update(word_to_matrix(w).phases)
    return SigningMatrix(n, phases)


def classify_generator(g: int, n: int) -> tuple[str, int] | None:
    """``("e", i)`` for a unit vector, ``("E", i)`` for a prefix sum with i >= 2, else None."""
    if g <= 0 or g >> n:
        return None
    if g & (g - 1) == 0:
        return ("e", g.bit_length())
    if g & (g + 1) == 0:
        return ("E", g.bit_length())
    return None


def signing_words(S: GeneratorSet) -> list[PauliWord]:
    """The anticommuting family for a set of e_i plus one E_i, or two E_i, E_j with i odd > j even."""
    n = S.dim
    words = []
    prefix_indices = []
    for g in S.gens:
        kind = classify_generator(g, n)
        if kind is None:
            raise UnsupportedShapeError(
                f"generator {to_bitstring(g, n)} is neither some e_i nor some E_i; "
                "not covered by the e_i/E_i construction"
            )
        label, i = kind
        if label == "e":
            words.append(edge_signing_e(i, n))
        else:
            prefix_indices.append(i)
            words.append(edge_signing_E(i, n))
    if len(prefix_indices) == 2:
        i, j = max(prefix_indices), min(prefix_indices)
        if not (i % 2 == 1 and j % 2 == 0):
            raise UnsupportedShapeError(
                f"two prefix sums E_{i}, E_{j} need the larger index odd and the smaller even"
            )
    elif len(prefix_indices) > 2:
        raise UnsupportedShapeError("at most two prefix-sum generators E_i are supported")
    return words


def construct_signing(S: GeneratorSet) -> SigningMatrix:
    """Build and verify a unitary signing of Gamma(Z_2^n, S) from Pauli words."""
    M = signing_from_family(signing_words(S))
    report = verify_unitary_signing(M, CubelikeGraph(S))
    if not report.passed:  # pragma: no cover - would mean the construction is wrong
        raise AssertionError(f"constructed matrix failed verification: {report.witnesses}")
    return M


@dataclass
class SigningReport:
    """Exact verdict of :func:`verify_unitary_signing`, with witnesses for failures."""

    n: int
    d: int
    support_ok: bool
    unit_ok: bool
    hermitian_ok: bool
    square_ok: bool
    trace_zero: bool
    witnesses: list[str]

    @property
    def passed(self) -> bool:
        return self.support_ok and self.unit_ok and self.hermitian_ok and self.square_ok

    @property
    def eigenvalue_multiplicity(self) -> int | None:
        """Multiplicity of each of +sqrt(d) and -sqrt(d), implied by M^2 = dI and trace 0."""
        if self.passed and self.trace_zero:
            return 1 << (self.n - 1)
        return None

    def lines(self) -> list[str]:
        out = [
            f"verified={'true' if self.passed else 'false'}",
            f"d={self.d}",
            f"support={'ok' if self.support_ok else 'fail'}",
            f"unit={'ok' if self.unit_ok else 'fail'}",
            f"hermitian={'ok' if self.hermitian_ok else 'fail'}",
            f"square={'ok' if self.square_ok else 'fail'}",
        ]
        if self.eigenvalue_multiplicity is not None:
            out.append(f"eigenvalues=+-sqrt({self.d}) mult={self.eigenvalue_multiplicity}")
        out += [f"witness={w}" for w in self.witnesses]
        return out


def square(M: SigningMatrix) -> dict[int, tuple[np.ndarray, np.ndarray]]:
    """``M @ M`` as offset -> (real part, imaginary part), exact integers.

    ``(M^2)[u, u^s^t]`` collects ``M[u, u^s] * M[u^s, u^s^t]`` over offset pairs
    ``(s, t)``; each row has at most ``d`` entries so this costs ``O(2^n d^2)``.
    """
    N = M.order
    offs = np.array(M.offsets, dtype=np.int64)
    if offs.size == 0:
        return {}
    P = np.stack([M.phases[s] for s in M.offsets]).astype(np.int64)  # (k, N)
    verts = np.arange(N, dtype=np.int64)
    shifted = verts[None, :] ^ offs[:, None]  # (k, N): u ^ s_g
    second = P[:, shifted].transpose(1, 0, 2)  # [g, h, u] = P[h, u ^ s_g]
    first = P[:, None, :]
    present = (first != ABSENT) & (second != ABSENT)
    ph = (first + second) % 4
    re = np.where(present, _RE[ph], 0)
    im = np.where(present, _IM[ph], 0)
    target = offs[:, None] ^ offs[None, :]
    uniq, inv = np.unique(target.ravel(), return_inverse=True)
    acc_re = np.zeros((uniq.size, N), dtype=np.int64)
    acc_im = np.zeros((uniq.size, N), dtype=np.int64)
    np.add.at(acc_re, inv, re.reshape(-1, N))
    np.add.at(acc_im, inv, im.reshape(-1, N))
    return {int(t): (acc_re[i], acc_im[i]) for i, t in enumerate(uniq)}


def verify_unitary_signing(M: SigningMatrix, G: CubelikeGraph, max_witnesses: int = 5) -> SigningReport:
    """Check support, unit entries, Hermitian symmetry and ``M^2 = d I`` exactly."""
    if M.n != G.n:
        raise DimensionError(f"matrix is over Z_2^{M.n}, graph over Z_2^{G.n}")
    n, N, d = G.n, G.order, G.degree
    bits = lambda v: to_bitstring(v, n)  # noqa: E731
    witnesses: list[str] = []
    verts = np.arange(N, dtype=np.int64)

    support_ok = True
    for s in M.offsets:
        if s not in G.gens:
            u = int(np.flatnonzero(M.phases[s] != ABSENT)[0])
            witnesses.append(f"entry ({bits(u)},{bits(u ^ s)}) is not an edge")
            support_ok = False
    for s in G.gens:
        arr = M.phases.get(s)
        missing = np.arange(N) if arr is None else np.flatnonzero(arr == ABSENT)
        if missing.size:
            u = int(missing[0])
            witnesses.append(f"edge ({bits(u)},{bits(u ^ s)}) has no entry")
            support_ok = False

    # entries are i**k by construction; re-check the stored exponents
    unit_ok = all(np.all((a >= ABSENT) & (a <= 3)) for a in M.phases.values())

    hermitian_ok = True
    for s, arr in M.phases.items():
        mirror = arr[verts ^ s]
        present = arr != ABSENT
        bad = (present != (mirror != ABSENT)) | (present & ((arr.astype(np.int64) + mirror) % 4 != 0))
        if bad.any():
            u = int(np.flatnonzero(bad)[0])
            witnesses.append(f"entry ({bits(u)},{bits(u ^ s)}) is not the conjugate of its transpose")
            hermitian_ok = False

    square_ok = True
    sq = square(M)
    if 0 not in sq:
        sq[0] = (np.zeros(N, dtype=np.int64), np.zeros(N, dtype=np.int64))
    for t, (re, im) in sorted(sq.items()):
        want = d if t == 0 else 0
        bad = np.flatnonzero((re != want) | (im != 0))
        if bad.size:
            square_ok = False
            for u in bad[: max(1, max_witnesses - len(witnesses))]:
                u = int(u)
                what = "diagonal" if t == 0 else "rows"
                witnesses.append(
                    f"{what} ({bits(u)},{bits(u ^ t)}): (M^2) entry = {re[u]}{im[u]:+d}i, expected {want}"
                )

    return SigningReport(
        n=n,
        d=d,
        support_ok=support_ok,
        unit_ok=unit_ok,
        hermitian_ok=hermitian_ok,
        square_ok=square_ok,
        trace_zero=M.trace == (0, 0),
        witnesses=witnesses[:max_witnesses] if max_witnesses else witnesses,
    )


def signing_graph(M: SigningMatrix) -> CubelikeGraph:
    """The cubelike graph whose edge set is the support of ``M``."""
    if 0 in M.phases:
        raise NotASigningError("matrix has diagonal entries")
    return CubelikeGraph(GeneratorSet(M.n, M.offsets))


def _require_signing(M: SigningMatrix, name: str) -> CubelikeGraph:
    G = signing_graph(M)
    report = verify_unitary_signing(M, G)
    if not report.passed:
        raise NotASigningError(f"{name} is not a unitary signing: {'; '.join(report.witnesses)}")
    return G


def pieces_anticommute(P: np.ndarray, s: int, Q: np.ndarray, t: int) -> np.ndarray:
    """Rows ``u`` where the single-offset matrices (P, s) and (Q, t) fail ``PQ + QP = 0``."""
    verts = np.arange(P.size, dtype=np.int64)
    pq = (P.astype(np.int64) + Q[verts ^ s]) % 4  # (PQ)[u, u^s^t]
    qp = (Q.astype(np.int64) + P[verts ^ t]) % 4  # (QP)[u, u^t^s]
    return np.flatnonzero((pq - qp) % 4 != 2)


@dataclass
class Decomposition:
    pieces: dict[int, SigningMatrix]
    edge_signings_ok: bool
    commuting_pairs: list[tuple[int, int]]

    @property
    def anticommuting(self) -> bool:
        return self.edge_signings_ok and not self.commuting_pairs


def decompose_by_generator(M: SigningMatrix, S: GeneratorSet) -> Decomposition:
    """Split a signing of a Sidon Cayley graph into its per-generator edge signings.

    The pieces of a genuine signing must pairwise anticommute; any pair that
    does not is listed in ``commuting_pairs``.
    """
    G = CubelikeGraph(S)
    report = verify_unitary_signing(M, G)
    if not report.passed:
        raise NotASigningError("input is not a unitary signing: " + "; ".join(report.witnesses))
    if not is_sidon(S):
        raise ValueError("decomposition argument needs a Sidon generating set")
    pieces = {s: SigningMatrix(M.n, {s: M.phases[s]}) for s in S.gens}
    edge_ok = all(
        verify_unitary_signing(p, CubelikeGraph(GeneratorSet(M.n, (s,)))).passed for s, p in pieces.items()
    )
    commuting = [
        (s, t)
        for s, t in combinations(S.gens, 2)
        if pieces_anticommute(M.phases[s], s, M.phases[t], t).size
    ]
    return Decomposition(pieces, edge_ok, commuting)


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    size: int
    bound: int
    reason: str


def unitary_feasibility_sidon(S: GeneratorSet) -> Feasibility:
    """A Sidon set with more than 2n+1 elements has no unitary signing.

    ``feasible=True`` is not a verdict: it only means the counting bound does
    not rule a signing out.
    """
    if not is_sidon(S):
        raise ValueError("the anticommuting-family bound only applies to Sidon generating sets")
    bound = 2 * S.dim + 1
    if len(S) > bound:
        return Feasibility(
            False,
            len(S),
            bound,
            f"a signing would need {len(S)} pairwise anticommuting invertible "
            f"{1 << S.dim}x{1 << S.dim} matrices, but at most {bound} exist",
        )
    return Feasibility(True, len(S), bound, f"|S|={len(S)} <= {bound}; bound does not forbid a signing")


def tensor_signing(M1: SigningMatrix, M2: SigningMatrix) -> SigningMatrix:
    """Kronecker product ``M1 (x) M2``, a signing of the tensor-product graph.

    Vertex ``(x, y)`` is encoded as ``x << b | y`` where ``b = M2.n``.
    """
    _require_signing(M1, "left factor")
    _require_signing(M2, "right factor")
    b = M2.n
    phases = {}
    for s1, p1 in M1.phases.items():
        for s2, p2 in M2.phases.items():
            a1 = p1.astype(np.int64)[:, None]
            a2 = p2.astype(np.int64)[None, :]
            ph = np.where((a1 == ABSENT) | (a2 == ABSENT), ABSENT, (a1 + a2) % 4)
            phases[s1 << b | s2] = ph.ravel()
    return SigningMatrix(M1.n + b, phases)


def huang_signing(n: int) -> SigningMatrix:
    """Sum of the words for e_1..e_n: an orthogonal signing of Q^n."""
    return signing_from_family([edge_signing_e(i, n) for i in range(1, n + 1)])


def dense_word_matrix(w: PauliWord) -> np.ndarray:
    """Explicit Kronecker product of the 2x2 symbol matrices (small n only)."""
    out = np.ones((1, 1), dtype=complex)
    for sym in w.symbols:
        out = np.kron(out, _PAULI_MATRICES[sym])
    return out


__all__ = [
    "CommutingPairError",
    "Decomposition",
    "Feasibility",
    "NotASigningError",
    "Pauli",
    "PauliWord",
    "SigningMatrix",
    "SigningReport",
    "Unit",
    "UnsupportedShapeError",
    "construct_signing",
    "decompose_by_generator",
    "dense_word_matrix",
    "edge_signing_E",
    "edge_signing_e",
    "huang_signing",
    "signing_from_family",
    "signing_graph",
    "signing_words",
    "square",
    "tensor_signing",
    "unitary_feasibility_sidon",
    "verify_unitary_signing",
    "word_to_matrix",
    "words_anticommute",
]
