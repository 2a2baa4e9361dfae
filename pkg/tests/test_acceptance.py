"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import time
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from cubesign import formats
from cubesign.cayley import (
    CubelikeGraph,
    cut_size,
    exhaustive_maxdeg_bound,
    hypercube,
    hypercube_plus,
    sampled_maxdeg_bound,
    sqrt_degree_ceil,
)
from cubesign.cli import EXIT_OBSTRUCTION, EXIT_OK, main
from cubesign.gf2 import E, GeneratorSet, bch_sidon_set, e, is_sidon, span_rank
from cubesign.orthosolve import (
    EdgeLabelling,
    ParityCertificate,
    brute_force_orthogonal,
    decide_orthogonal,
    staircase_certificate,
    verify_certificate,
)
from cubesign.pauli import (
    Pauli,
    PauliWord,
    construct_signing,
    square,
    unitary_feasibility_sidon,
    verify_unitary_signing,
    words_anticommute,
)
from cubesign.spectral import (
    bckw_report,
    certify_character,
    eigenvalues,
    mixing_degree_check,
    quadratic_form_cut_identity,
)
from oracles import adjacency, all_bisections, character_sum, sidon_bruteforce, word_dense

pytestmark = pytest.mark.acceptance


def record(capsys, number, title, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {title}: {detail}")
    assert ok, detail


def test_orthogonal_truth_table_qplus(capsys, tmp_path):
    start = time.perf_counter()
    rows, ok = [], True
    for n in (2, 4, 5, 6, 7, 8, 9):
        G = hypercube_plus(n)
        gpath, out = tmp_path / f"q{n}.txt", tmp_path / f"q{n}.out"
        gpath.write_text(formats.format_graph(G.S))
        code = main(["decide-orthogonal", str(gpath), "--out", str(out)])
        capsys.readouterr()
        expect_signing = n % 4 in (0, 3)
        if code == EXIT_OK:
            M = formats.parse_signing(out.read_text())
            valid = M.is_real and verify_unitary_signing(M, G).passed
        elif code == EXIT_OBSTRUCTION:
            valid = verify_certificate(G, formats.parse_certificate(out.read_text(), n))
        else:
            valid = False
        ok &= valid and (code == EXIT_OK) == expect_signing
        rows.append(f"n={n}:{'signing' if code == EXIT_OK else 'obstruction'}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 10
    record(capsys, 1, "orthogonal signing iff n = 0,3 mod 4", ok, f"{' '.join(rows)} in {elapsed:.2f}s")


def _theorem_shapes(max_n):
    for n in range(1, max_n + 1):
        units = [e(i, n) for i in range(1, n + 1)]
        prefixes = [()] + [(E(i, n),) for i in range(2, n + 1)]
        prefixes += [(E(i, n), E(j, n)) for i in range(3, n + 1, 2) for j in range(2, i, 2)]
        for extra in prefixes:
            for mask in range(1 << n):
                gens = tuple(u for k, u in enumerate(units) if mask >> k & 1) + extra
                if gens:
                    yield n, gens


def test_construction_all_shapes(capsys):
    start = time.perf_counter()
    count, bad = 0, []
    for n, gens in _theorem_shapes(8):
        S = GeneratorSet(n, gens)
        G = CubelikeGraph(S)
        M = construct_signing(S)
        rep = verify_unitary_signing(M, G)
        sq = square(M)
        exact = all(np.all(re == (len(S) if t == 0 else 0)) and not im.any() for t, (re, im) in sq.items())
        support = set(M.offsets) == set(S.gens) and M.nnz == len(S) * G.order
        if n <= 4:
            D = M.to_dense()
            support &= np.array_equal(D != 0, adjacency(n, S.gens) == 1)
            exact &= np.array_equal(D @ D, len(S) * np.eye(G.order)) and np.array_equal(D, D.conj().T)
        if not (rep.passed and exact and support):
            bad.append((n, gens))
        count += 1
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    record(capsys, 2, "e_i/E_i signings square to |S| I", ok, f"{count} shapes, {len(bad)} failures, {elapsed:.1f}s")


def test_staircase_vs_solver(capsys):
    rows, ok = [], True
    for n in (2, 5, 6, 9):
        G = hypercube_plus(n)
        cert = staircase_certificate(n)
        valid = verify_certificate(G, cert) and len(cert) == n * (n + 1) // 2
        if n == 5:
            valid &= len(cert) == 15 and set(cert.edge_usage().values()) == {2}
        solver = decide_orthogonal(G)
        valid &= isinstance(solver, ParityCertificate) and verify_certificate(G, solver)
        ok &= valid
        rows.append(f"n={n}:{len(cert)} cycles/solver {len(solver)}")
    record(capsys, 3, "staircase certificates agree with solver", ok, ", ".join(rows))


def test_bckw_reproduction(capsys):
    start = time.perf_counter()
    rep = bckw_report(trials=10_000, seed=0)
    elapsed = time.perf_counter() - start
    ok = (
        rep.lambda2 == 1
        and rep.cut_bound == 16
        and rep.sampled_min_cut >= 16
        and rep.trials == 10_000
        and rep.matching_edges == 8
        and rep.signing_real
        and rep.signing_verified
        and rep.conclusion
        and elapsed < 5
    )
    detail = (
        f"lambda2={rep.lambda2} bound={rep.cut_bound} min sampled cut={rep.sampled_min_cut} "
        f"exact min={rep.exact_min_bisection} matching={rep.matching_edges} in {elapsed:.2f}s"
    )
    record(capsys, 4, "Q_+^4 is not two copies joined by a matching", ok, detail)


def _sidon_graphs(max_edges):
    for n in range(1, 6):
        half = 1 << (n - 1)
        for d in range(1, max_edges // half + 1):
            for gens in combinations(range(1, 1 << n), d):
                if is_sidon(gens):
                    yield CubelikeGraph(GeneratorSet(n, gens))


def test_brute_force_equivalence(capsys):
    count, full, mismatches = 0, 0, []
    for G in _sidon_graphs(24):
        verdict = isinstance(decide_orthogonal(G), EdgeLabelling)
        exhaustive = G.num_edges <= 16
        brute = brute_force_orthogonal(G, gauge=not exhaustive)
        full += exhaustive
        if verdict != brute:
            mismatches.append(G.gens)
        count += 1
    K4 = hypercube_plus(2)
    k4_ok = not brute_force_orthogonal(K4, gauge=False) and isinstance(decide_orthogonal(K4), ParityCertificate)
    ok = not mismatches and k4_ok
    detail = f"{count} graphs ({full} over all 2^|E| signings), {len(mismatches)} mismatches, K4 unsignable={k4_ok}"
    record(capsys, 5, "solver matches exhaustive search", ok, detail)


def test_anticommutation_oracle(capsys):
    rng = np.random.default_rng(20240601)
    pairs, mismatches = 10_000, 0
    symbols = list(Pauli)
    for _ in range(pairs):
        n = int(rng.integers(1, 7))
        A = PauliWord(tuple(symbols[k] for k in rng.integers(0, 4, n)))
        B = PauliWord(tuple(symbols[k] for k in rng.integers(0, 4, n)))
        dA, dB = word_dense(A), word_dense(B)
        if words_anticommute(A, B) != (not np.any(dA @ dB + dB @ dA)):
            mismatches += 1
    record(capsys, 6, "symbol rule matches AB+BA=0", mismatches == 0, f"{pairs} pairs, {mismatches} mismatches")


def test_unitary_infeasibility(capsys):
    S = bch_sidon_set(5)
    verdict = unitary_feasibility_sidon(S)
    sidon = {m: is_sidon(bch_sidon_set(m)) for m in range(2, 7)}
    brute = all(sidon_bruteforce(bch_sidon_set(m).gens) for m in (2, 3, 4))
    ok = S.dim == 10 and len(S) > 21 and not verdict.feasible and all(sidon.values()) and brute
    detail = f"|S|={len(S)} bound={verdict.bound} feasible={verdict.feasible} sidon m=2..6 {all(sidon.values())}"
    record(capsys, 7, "BCH Sidon set has no unitary signing", ok, detail)


def _spanning_sets(max_n):
    for n in range(1, max_n + 1):
        for d in range(n, (1 << n)):
            for gens in combinations(range(1, 1 << n), d):
                if span_rank(gens, n) == n:
                    yield GeneratorSet(n, gens)


def test_sampled_induced_degree(capsys):
    count, bad = 0, []
    for S in _spanning_sets(4):
        G = CubelikeGraph(S)
        if sampled_maxdeg_bound(G, G.order // 2 + 1, 1000, seed=count) < sqrt_degree_ceil(G):
            bad.append(S.gens)
        count += 1
    for n in (5, 6):
        G = hypercube_plus(n)
        if sampled_maxdeg_bound(G, G.order // 2 + 1, 1000, seed=n) < sqrt_degree_ceil(G):
            bad.append(G.gens)
        count += 1
    q2 = exhaustive_maxdeg_bound(hypercube(2), 3)
    ok = not bad and q2 >= sqrt_degree_ceil(hypercube(2))
    record(capsys, 8, "induced max degree >= sqrt(d)", ok, f"{count} graphs x 1000 subsets, {len(bad)} failures, Q^2 exact min={q2}")


def test_exactness_suite(capsys):
    graphs = [hypercube(n) for n in range(1, 8)] + [hypercube_plus(n) for n in range(2, 8)]
    graphs.append(CubelikeGraph(bch_sidon_set(3)))
    spectra_ok = True
    for G in graphs:
        rep = eigenvalues(G)
        lam = rep.by_character
        spectra_ok &= lam.dtype.kind == "i" and int(lam.sum()) == 0 and sum(rep.multiplicities.values()) == G.order
        spectra_ok &= all(int(lam[x]) == character_sum(x, G.gens) for x in range(G.order))
        spectra_ok &= all(certify_character(G, x, int(lam[x]), G.vertices()) for x in range(G.order))

    Q = hypercube_plus(4)
    spec = eigenvalues(Q)
    cut_ok, bisections = True, 0
    for U in all_bisections(16):
        rep = quadratic_form_cut_identity(Q, U, spec)
        cut_ok &= isinstance(rep.predicted_cut, Fraction) and rep.identity_holds and rep.bound_holds
        cut_ok &= rep.cut == cut_size(Q, U)
        bisections += 1
    for n in range(2, 8):
        G = hypercube(n)
        rep = quadratic_form_cut_identity(G, [v for v in range(G.order) if not v >> (n - 1) & 1])
        cut_ok &= rep.identity_holds and rep.cut == 2 ** (n - 1)

    mixing_ok, subsets = True, 0
    rng = np.random.default_rng(7)
    for G in graphs:
        spec = eigenvalues(G)
        for _ in range(200):
            size = int(rng.integers(1, G.order + 1))
            rep = mixing_degree_check(G, rng.permutation(G.order)[:size], spec)
            mixing_ok &= isinstance(rep.avg_degree, Fraction) and isinstance(rep.alpha, Fraction) and rep.holds
            subsets += 1
    ok = spectra_ok and cut_ok and mixing_ok
    detail = (
        f"spectra {len(graphs)} graphs {spectra_ok}, {bisections} bisections of Q_+^4 {cut_ok}, "
        f"{subsets} mixing subsets {mixing_ok}"
    )
    record(capsys, 9, "exact spectra, cut identity and mixing bound", ok, detail)
