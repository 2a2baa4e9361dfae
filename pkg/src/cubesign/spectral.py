"""Exact spectra of cubelike graphs and the cut / mixing bounds built on them.

The characters ``chi_x(v) = (-1)^<x, v>`` are eigenvectors of every Cayley
graph of Z_2^n, with eigenvalue ``lambda_x = sum_s (-1)^<x, s>``.  The vector
``(lambda_x)_x`` is the Walsh-Hadamard transform of the indicator of S, so
all eigenvalues are integers obtained with integer butterflies.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cayley import CubelikeGraph, _trial_rng, as_bitmap, cut_size, hypercube_plus, induced_degrees
from .gf2 import GeneratorSet


def walsh_hadamard(values: np.ndarray) -> np.ndarray:
    """Unnormalised integer Walsh-Hadamard transform of a length-2^n vector."""
    out = np.array(values, dtype=np.int64)
    N = out.size
    if N & (N - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < N:
        view = out.reshape(-1, 2, h)
        a = view[:, 0, :].copy()
        view[:, 0, :] += view[:, 1, :]
        view[:, 1, :] = a - view[:, 1, :]
        h *= 2
    return out


def character_eigenvalues(G: CubelikeGraph) -> np.ndarray:
    """``lambda_x`` for every ``x`` in Z_2^n, indexed by ``x``."""
    indicator = np.zeros(G.order, dtype=np.int64)
    indicator[list(G.gens)] = 1
    return walsh_hadamard(indicator)


def _parity(x: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(x) & 1).astype(np.int64)


def certify_character(G: CubelikeGraph, x: int, lam: int, coords) -> bool:
    """Check ``(A chi_x)(v) == lam * chi_x(v)`` at the given coordinates, summing over neighbors."""
    coords = np.asarray(coords, dtype=np.int64)
    chi = lambda v: 1 - 2 * _parity(np.asarray(v, dtype=np.int64) & x)  # noqa: E731
    lhs = sum(chi(coords ^ s) for s in G.gens) if G.gens else np.zeros(coords.shape, dtype=np.int64)
    return bool(np.all(lhs == lam * chi(coords)))


@dataclass
class SpectrumReport:
    d: int
    by_character: np.ndarray = field(repr=False)  # eigenvalue of chi_x at index x
    multiplicities: dict[int, int]  # eigenvalue -> multiplicity, descending

    @property
    def lambda1(self) -> int:
        return max(self.multiplicities)

    @property
    def lambda2(self) -> int:
        """Second largest eigenvalue of the sorted multiset (equals d when disconnected)."""
        ordered = sorted(self.by_character.tolist(), reverse=True)
        return ordered[1] if len(ordered) > 1 else ordered[0]

    @property
    def lambda_min(self) -> int:
        return min(self.multiplicities)

    @property
    def nontrivial(self) -> np.ndarray:
        return self.by_character[1:]

    @property
    def lam(self) -> int:
        """Largest absolute value over the nontrivial characters ``x != 0``."""
        rest = self.nontrivial
        return int(np.abs(rest).max()) if rest.size else 0

    def lines(self) -> list[str]:
        return [f"lambda={lam} mult={m}" for lam, m in self.multiplicities.items()]


def eigenvalues(G: CubelikeGraph, seed: int = 0, spot_checks: int = 3) -> SpectrumReport:
    """Spectrum from character sums, each eigenpair spot-checked at a few coordinates."""
    lam = character_eigenvalues(G)
    rng = _trial_rng(seed, 0)
    coords = rng.integers(0, G.order, size=(G.order, spot_checks))
    xs = G.vertices()[:, None]
    lhs = np.zeros(coords.shape, dtype=np.int64)
    for s in G.gens:
        lhs += 1 - 2 * _parity((coords ^ s) & xs)
    bad = np.flatnonzero(np.any(lhs != lam[:, None] * (1 - 2 * _parity(coords & xs)), axis=1))
    if bad.size:  # pragma: no cover
        raise AssertionError(f"character {int(bad[0])} failed the eigenvector identity")
    counts = Counter(lam.tolist())
    mult = {k: counts[k] for k in sorted(counts, reverse=True)}
    return SpectrumReport(G.degree, lam, mult)


def cut_lower_bound(G: CubelikeGraph, spectrum: SpectrumReport | None = None) -> Fraction:
    """``(d - lambda_2) * 2^n / 4``: no bisection cuts fewer edges."""
    spec = spectrum or eigenvalues(G)
    return Fraction((G.degree - spec.lambda2) * G.order, 4)


def quadratic_form(G: CubelikeGraph, f: np.ndarray) -> int:
    """``f^T A f`` for an integer vector ``f`` on the vertices."""
    f = np.asarray(f, dtype=np.int64)
    verts = G.vertices()
    return int(sum(int(f @ f[verts ^ s]) for s in G.gens))


@dataclass(frozen=True)
class CutIdentityReport:
    cut: int
    quadratic_form: int
    predicted_cut: Fraction
    lower_bound: Fraction

    @property
    def identity_holds(self) -> bool:
        return self.predicted_cut == self.cut

    @property
    def bound_holds(self) -> bool:
        return self.cut >= self.lower_bound


def quadratic_form_cut_identity(
    G: CubelikeGraph, U, spectrum: SpectrumReport | None = None
) -> CutIdentityReport:
    """Check ``e(U, V-U) = (N d - f^T A f) / 4`` with ``f = +-1`` on ``U`` / its complement."""
    inside = as_bitmap(G, U)
    if int(inside.sum()) * 2 != G.order:
        raise ValueError(f"U has {int(inside.sum())} vertices; a bisection needs {G.order // 2}")
    f = np.where(inside, 1, -1)
    q = quadratic_form(G, f)
    return CutIdentityReport(
        cut=cut_size(G, inside),
        quadratic_form=q,
        predicted_cut=Fraction(G.order * G.degree - q, 4),
        lower_bound=cut_lower_bound(G, spectrum),
    )


def min_bisection(G: CubelikeGraph) -> int:
    """Exact minimum bisection cut by enumeration (vertex 0 fixed in U); small graphs only."""
    from itertools import combinations

    N = G.order
    if math.comb(N - 1, N // 2 - 1) > 500_000:
        raise ValueError("too many bisections to enumerate")
    best = None
    for rest in combinations(range(1, N), N // 2 - 1):
        c = cut_size(G, [0, *rest])
        best = c if best is None else min(best, c)
    return best


def sampled_bisection_cuts(G: CubelikeGraph, trials: int, seed: int) -> np.ndarray:
    N = G.order
    verts = G.vertices()
    cuts = np.empty(trials, dtype=np.int64)
    for t in range(trials):
        perm = _trial_rng(seed, t).permutation(N)
        inside = np.zeros(N, dtype=bool)
        inside[perm[: N // 2]] = True
        cuts[t] = sum(np.count_nonzero(inside & ~inside[verts ^ s]) for s in G.gens)
    return cuts


@dataclass
class BCKWReport:
    """Why Q_+^4 is an orthogonally signable 5-regular graph with no 8-edge perfect-matching bisection."""

    signing_real: bool
    signing_verified: bool
    solver_agrees: bool
    lambda2: int
    cut_bound: Fraction
    sampled_min_cut: int
    trials: int
    seed: int
    exact_min_bisection: int | None
    matching_edges: int

    @property
    def conclusion(self) -> bool:
        return (
            self.signing_real
            and self.signing_verified
            and self.solver_agrees
            and self.lambda2 == 1
            and self.cut_bound == 16
            and self.sampled_min_cut >= self.cut_bound
            and (self.exact_min_bisection is None or self.exact_min_bisection >= self.cut_bound)
            and self.matching_edges < self.cut_bound
        )

    def lines(self) -> list[str]:
        out = [
            f"seed={self.seed}",
            f"signing_real={str(self.signing_real).lower()}",
            f"signing_verified={str(self.signing_verified).lower()}",
            f"solver_agrees={str(self.solver_agrees).lower()}",
            f"lambda2={self.lambda2}",
            f"cut_lower_bound={self.cut_bound}",
            f"sampled_bisections={self.trials}",
            f"sampled_min_cut={self.sampled_min_cut}",
        ]
        if self.exact_min_bisection is not None:
            out.append(f"exact_min_bisection={self.exact_min_bisection}")
        out += [
            f"perfect_matching_edges={self.matching_edges}",
            f"conclusion={'not_two_copies_plus_matching' if self.conclusion else 'unproven'}",
        ]
        return out


def bckw_report(trials: int = 10_000, seed: int = 0, exhaustive: bool = True) -> BCKWReport:
    from .orthosolve import EdgeLabelling, decide_orthogonal
    from .pauli import construct_signing, verify_unitary_signing

    G = hypercube_plus(4)
    M = construct_signing(G.S)
    spec = eigenvalues(G, seed=seed)
    bound = cut_lower_bound(G, spec)
    cuts = sampled_bisection_cuts(G, trials, seed)
    return BCKWReport(
        signing_real=M.is_real,
        signing_verified=verify_unitary_signing(M, G).passed,
        solver_agrees=isinstance(decide_orthogonal(G), EdgeLabelling),
        lambda2=spec.lambda2,
        cut_bound=bound,
        sampled_min_cut=int(cuts.min()),
        trials=trials,
        seed=seed,
        exact_min_bisection=min_bisection(G) if exhaustive else None,
        matching_edges=G.order // 2,
    )


@dataclass(frozen=True)
class MixingReport:
    alpha: Fraction
    avg_degree: Fraction
    d: int
    lam: int  # max |lambda_x| over x != 0
    lambda_min: int  # smallest nontrivial eigenvalue
    lambda_max: int  # largest nontrivial eigenvalue

    @property
    def deviation(self) -> Fraction:
        return abs(self.avg_degree - self.alpha * self.d)

    @property
    def two_sided_holds(self) -> bool:
        return self.deviation <= self.lam * (1 - self.alpha)

    @property
    def lower_holds(self) -> bool:
        """Average degree is at least ``alpha d + lambda_min (1 - alpha)``."""
        return self.avg_degree >= self.alpha * self.d + self.lambda_min * (1 - self.alpha)

    @property
    def upper_holds(self) -> bool:
        return self.avg_degree <= self.alpha * self.d + self.lambda_max * (1 - self.alpha)

    @property
    def holds(self) -> bool:
        return self.two_sided_holds and self.lower_holds and self.upper_holds

    def lines(self) -> list[str]:
        return [
            f"alpha={self.alpha}",
            f"avg_degree={self.avg_degree}",
            f"d={self.d}",
            f"lambda={self.lam}",
            f"lambda_min={self.lambda_min}",
            f"deviation={self.deviation}",
            f"bound={self.lam * (1 - self.alpha)}",
            f"holds={str(self.holds).lower()}",
        ]


def mixing_degree_check(G: CubelikeGraph, U, spectrum: SpectrumReport | None = None) -> MixingReport:
    inside = as_bitmap(G, U)
    size = int(inside.sum())
    if size == 0:
        raise ValueError("vertex set is empty")
    spec = spectrum or eigenvalues(G)
    rest = spec.nontrivial
    return MixingReport(
        alpha=Fraction(size, G.order),
        avg_degree=Fraction(int(induced_degrees(G, inside).sum()), size),
        d=G.degree,
        lam=spec.lam,
        lambda_min=int(rest.min()) if rest.size else 0,
        lambda_max=int(rest.max()) if rest.size else 0,
    )


@dataclass(frozen=True)
class Trial:
    index: int
    d: int
    lam: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.lam, self.d)


@dataclass
class ExperimentReport:
    n: int
    multiplier: float
    seed: int
    trials: list[Trial]

    @property
    def fraction_below_half(self) -> Fraction:
        good = sum(1 for t in self.trials if 2 * t.lam <= t.d)
        return Fraction(good, len(self.trials))

    def lines(self) -> list[str]:
        out = [f"n={self.n} c={self.multiplier} seed={self.seed} trials={len(self.trials)}"]
        out += [f"trial={t.index} d={t.d} lambda={t.lam} ratio={t.ratio}" for t in self.trials]
        out.append(f"fraction_lambda_le_half_d={self.fraction_below_half}")
        return out


def random_cayley_experiment(n: int, multiplier: float, trials: int, seed: int) -> ExperimentReport:
    """Nontrivial spectral radius of random Cayley graphs with ceil(c n) generators.

    Purely an empirical look at how often ``lambda <= d/2``; nothing is asserted.
    """
    if not 1 <= n <= 16:
        raise ValueError("n must lie in 1..16")
    d = math.ceil(multiplier * n)
    if not 1 <= d <= (1 << n) - 1:
        raise ValueError(f"cannot pick {d} distinct nonzero vectors in Z_2^{n}")
    if trials < 1:
        raise ValueError("need at least one trial")
    out = []
    for t in range(trials):
        rng = _trial_rng(seed, t)
        gens = rng.choice(np.arange(1, 1 << n), size=d, replace=False)
        G = CubelikeGraph(GeneratorSet(n, tuple(int(g) for g in gens)))
        out.append(Trial(t, d, eigenvalues(G, seed=seed).lam))
    return ExperimentReport(n, multiplier, seed, out)


__all__ = [
    "BCKWReport",
    "CutIdentityReport",
    "ExperimentReport",
    "MixingReport",
    "SpectrumReport",
    "Trial",
    "bckw_report",
    "certify_character",
    "character_eigenvalues",
    "cut_lower_bound",
    "eigenvalues",
    "min_bisection",
    "mixing_degree_check",
    "quadratic_form",
    "quadratic_form_cut_identity",
    "random_cayley_experiment",
    "sampled_bisection_cuts",
    "walsh_hadamard",
]
