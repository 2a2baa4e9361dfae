"""Command-line interface.

Exit codes: 0 success, 1 error or failed verification, 2 obstruction found
(no orthogonal signing, or no unitary signing possible).
"""

from __future__ import annotations

import argparse
import shlex
import sys
from pathlib import Path

from . import formats
from .cayley import CubelikeGraph, sampled_maxdeg_bound, sqrt_degree_ceil
from .gf2 import is_sidon, to_bitstring, zero_sum_obstruction_cycle
from .orthosolve import (
    LemmaInapplicableError,
    ParityCertificate,
    decide_orthogonal,
    labelling_to_signing,
    staircase_certificate,
    verify_certificate,
)
from .pauli import UnsupportedShapeError, construct_signing, unitary_feasibility_sidon, verify_unitary_signing
from .spectral import (
    bckw_report,
    cut_lower_bound,
    eigenvalues,
    mixing_degree_check,
    quadratic_form_cut_identity,
    random_cayley_experiment,
    sampled_bisection_cuts,
)

EXIT_OK, EXIT_ERROR, EXIT_OBSTRUCTION = 0, 1, 2


class CommandError(Exception):
    pass


def _read_graph(path: str) -> CubelikeGraph:
    return CubelikeGraph(formats.parse_graph(Path(path).read_text()))


def _write(path: str | None, text: str) -> None:
    if path is not None:
        Path(path).write_text(text)


def _emit(lines) -> None:
    for ln in lines:
        print(ln)


def _invocation(argv: list[str]) -> str:
    return "# cubesign " + shlex.join(argv)


def cmd_construct(args) -> int:
    G = _read_graph(args.graph)
    try:
        M = construct_signing(G.S)
    except UnsupportedShapeError as exc:
        raise CommandError(str(exc)) from exc
    report = verify_unitary_signing(M, G)
    if not report.passed:  # pragma: no cover
        raise CommandError("constructed signing failed verification")
    _write(args.out, formats.format_signing(M))
    print(f"verified=true d={G.degree} complex={str(not M.is_real).lower()}")
    return EXIT_OK


def cmd_decide_orthogonal(args) -> int:
    G = _read_graph(args.graph)
    try:
        result = decide_orthogonal(G)
    except LemmaInapplicableError as exc:
        raise CommandError(f"Lemma inapplicable: {exc}") from exc
    if isinstance(result, ParityCertificate):
        if not verify_certificate(G, result):  # pragma: no cover
            raise CommandError("solver certificate failed verification")
        _write(args.out, formats.format_certificate(result, G.n))
        print(f"verdict=obstruction cycles={len(result)} certificate_verified=true")
        return EXIT_OBSTRUCTION
    M = labelling_to_signing(G, result)
    if not verify_unitary_signing(M, G).passed:  # pragma: no cover
        raise CommandError("solver signing failed verification")
    _write(args.out, formats.format_signing(M))
    _write(args.labelling, formats.format_labelling(result, G.n))
    print(f"verdict=signing d={G.degree} verified=true")
    return EXIT_OK


def cmd_verify(args) -> int:
    M = formats.parse_signing(Path(args.signing).read_text())
    G = _read_graph(args.graph)
    report = verify_unitary_signing(M, G)
    if report.passed:
        _emit(report.lines())
        return EXIT_OK
    for ln in report.lines():
        print(ln, file=sys.stderr)
    return EXIT_ERROR


def cmd_spectrum(args) -> int:
    _emit(eigenvalues(_read_graph(args.graph)).lines())
    return EXIT_OK


def cmd_cut_bound(args) -> int:
    G = _read_graph(args.graph)
    spec = eigenvalues(G)
    lines = [f"lambda2={spec.lambda2}", f"cut_lower_bound={cut_lower_bound(G, spec)}"]
    if args.vertices:
        U = formats.parse_vertex_set(Path(args.vertices).read_text(), G.n)
        rep = quadratic_form_cut_identity(G, U, spec)
        lines += [
            f"cut={rep.cut}",
            f"fAf={rep.quadratic_form}",
            f"identity={str(rep.identity_holds).lower()}",
            f"bound_holds={str(rep.bound_holds).lower()}",
        ]
        ok = rep.identity_holds and rep.bound_holds
    else:
        cuts = sampled_bisection_cuts(G, args.trials, args.seed)
        lines = [_invocation(args.argv), f"seed={args.seed}"] + lines
        lines += [f"sampled_bisections={args.trials}", f"sampled_min_cut={int(cuts.min())}"]
        ok = bool(cuts.min() >= cut_lower_bound(G, spec))
    if not ok:
        raise CommandError("; ".join(lines))
    _emit(lines)
    return EXIT_OK


def cmd_bckw(args) -> int:
    rep = bckw_report(trials=args.trials, seed=args.seed)
    if not rep.conclusion:
        raise CommandError("; ".join(rep.lines()))
    _emit([_invocation(args.argv), *rep.lines()])
    return EXIT_OK


def cmd_mixing_check(args) -> int:
    G = _read_graph(args.graph)
    U = formats.parse_vertex_set(Path(args.vertices).read_text(), G.n)
    rep = mixing_degree_check(G, U)
    if not rep.holds:
        raise CommandError("; ".join(rep.lines()))
    _emit(rep.lines())
    return EXIT_OK


def cmd_experiment(args) -> int:
    rep = random_cayley_experiment(args.n, args.c, args.trials, args.seed)
    text = "\n".join([_invocation(args.argv), *rep.lines()]) + "\n"
    _write(args.out, text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_staircase(args) -> int:
    from .cayley import hypercube_plus

    cert = staircase_certificate(args.n)
    if not verify_certificate(hypercube_plus(args.n), cert):  # pragma: no cover
        raise CommandError("staircase certificate failed verification")
    text = formats.format_certificate(cert, args.n)
    if args.out:
        _write(args.out, text)
        print(f"cycles={len(cert)} verified=true")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_sidon_check(args) -> int:
    G = _read_graph(args.graph)
    lines = [f"sidon={str(is_sidon(G.S)).lower()}", f"d={G.degree}"]
    cycle = zero_sum_obstruction_cycle(G.S)
    if cycle is None:
        lines.append("obstruction_cycle=none")
    else:
        lines.append(f"obstruction_cycle={','.join(to_bitstring(g, G.n) for g in cycle)} k={len(cycle)}")
    _emit(lines)
    return EXIT_OK


def cmd_feasibility(args) -> int:
    G = _read_graph(args.graph)
    try:
        verdict = unitary_feasibility_sidon(G.S)
    except ValueError as exc:
        raise CommandError(str(exc)) from exc
    _emit(
        [
            f"feasible={'not_forbidden' if verdict.feasible else 'false'}",
            f"size={verdict.size}",
            f"bound={verdict.bound}",
            f"reason={verdict.reason}",
        ]
    )
    return EXIT_OK if verdict.feasible else EXIT_OBSTRUCTION


def cmd_maxdeg(args) -> int:
    G = _read_graph(args.graph)
    size = args.size if args.size is not None else G.order // 2 + 1
    observed = sampled_maxdeg_bound(G, size, args.trials, args.seed)
    need = sqrt_degree_ceil(G)
    lines = [
        _invocation(args.argv),
        f"seed={args.seed}",
        f"subset_size={size}",
        f"trials={args.trials}",
        f"min_max_degree={observed}",
        f"ceil_sqrt_d={need}",
    ]
    if observed < need:
        raise CommandError("; ".join(lines))
    _emit(lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubesign", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def seeded(p, trials: int) -> None:
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=trials)

    p = sub.add_parser("construct", help="unitary signing from e_i / E_i generators")
    p.add_argument("graph")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("decide-orthogonal", help="orthogonal signing or parity certificate")
    p.add_argument("graph")
    p.add_argument("--out", help="signing file on success, certificate file on obstruction")
    p.add_argument("--labelling", help="also write the edge labelling here")
    p.set_defaults(func=cmd_decide_orthogonal)

    p = sub.add_parser("verify", help="verify a signing file against a graph")
    p.add_argument("signing")
    p.add_argument("graph")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="exact spectrum from character sums")
    p.add_argument("graph")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("cut-bound", help="spectral bisection bound, checked on a bisection or samples")
    p.add_argument("graph")
    p.add_argument("--vertices", help="vertex-set file holding a bisection")
    seeded(p, 1000)
    p.set_defaults(func=cmd_cut_bound)

    p = sub.add_parser("bckw", help="Q_+^4 is not two copies joined by a perfect matching")
    seeded(p, 10_000)
    p.set_defaults(func=cmd_bckw)

    p = sub.add_parser("mixing-check", help="average induced degree against the spectral bound")
    p.add_argument("graph")
    p.add_argument("vertices")
    p.set_defaults(func=cmd_mixing_check)

    p = sub.add_parser("experiment", help="spectra of random Cayley graphs of Z_2^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, required=True, help="generators per dimension")
    p.add_argument("--out")
    seeded(p, 50)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("staircase", help="parity certificate for Q_+^n, n = 1, 2 (mod 4)")
    p.add_argument("n", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_staircase)

    p = sub.add_parser("sidon-check", help="Sidon property and zero-sum generator cycle")
    p.add_argument("graph")
    p.set_defaults(func=cmd_sidon_check)

    p = sub.add_parser("feasibility", help="anticommuting-family bound for Sidon sets")
    p.add_argument("graph")
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("maxdeg", help="sampled induced max degree on more than half the vertices")
    p.add_argument("graph")
    p.add_argument("--size", type=int)
    seeded(p, 1000)
    p.set_defaults(func=cmd_maxdeg)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    try:
        return args.func(args)
    except (CommandError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
