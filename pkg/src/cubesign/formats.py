"""Plain-text readers and writers; bitstrings are most significant coordinate first.

graph        ``n=<int>`` then one generator bitstring per line
vertex set   one vertex bitstring per line
signing      ``n=<int> d=<int>`` then ``<u> <v> <entry>`` for each stored u < v
certificate  one 4-cycle per line, four vertex bitstrings in canonical order
labelling    ``<u> <v> <bit>`` per edge, u < v
"""

from __future__ import annotations

import re

import numpy as np

from .cayley import FourCycle
from .gf2 import GeneratorSet, from_bitstring, to_bitstring
from .orthosolve import EdgeLabelling, ParityCertificate
from .pauli import SigningMatrix, Unit


class FormatError(ValueError):
    pass


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _header_int(token: str, key: str) -> int:
    m = re.fullmatch(rf"{key}=(\d+)", token)
    if not m:
        raise FormatError(f"expected {key}=<int>, got {token!r}")
    return int(m.group(1))


def format_graph(S: GeneratorSet) -> str:
    return "\n".join([f"n={S.dim}", *(to_bitstring(g, S.dim) for g in S.gens)]) + "\n"


def parse_graph(text: str) -> GeneratorSet:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty graph file")
    n = _header_int(lines[0], "n")
    try:
        gens = tuple(from_bitstring(ln, n) for ln in lines[1:])
        return GeneratorSet(n, gens)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_vertex_set(U, n: int) -> str:
    arr = np.asarray(U)
    verts = np.flatnonzero(arr) if arr.dtype == bool else sorted(int(v) for v in U)
    return "".join(to_bitstring(int(v), n) + "\n" for v in verts)


def parse_vertex_set(text: str, n: int) -> list[int]:
    try:
        verts = [from_bitstring(ln, n) for ln in _lines(text)]
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if len(set(verts)) != len(verts):
        raise FormatError("duplicate vertex in vertex set")
    return verts


def format_signing(M: SigningMatrix) -> str:
    n = M.n
    d = len(M.offsets)
    out = [f"n={n} d={d}"]
    for (u, v), val in sorted(M.entries().items()):
        if u < v:
            out.append(f"{to_bitstring(u, n)} {to_bitstring(v, n)} {val}")
    return "\n".join(out) + "\n"


def parse_signing(text: str) -> SigningMatrix:
    """Read upper-triangle entries and fill the lower triangle by conjugation."""
    lines = _lines(text)
    if not lines:
        raise FormatError("empty signing file")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError(f"bad signing header {lines[0]!r}")
    n = _header_int(head[0], "n")
    _header_int(head[1], "d")
    entries: dict[tuple[int, int], Unit] = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise FormatError(f"bad signing line {ln!r}")
        try:
            u, v = from_bitstring(parts[0], n), from_bitstring(parts[1], n)
            val = Unit.parse(parts[2])
        except ValueError as exc:
            raise FormatError(str(exc)) from exc
        if u >= v:
            raise FormatError(f"line {ln!r} is not an upper-triangle entry")
        if (u, v) in entries:
            raise FormatError(f"entry ({parts[0]}, {parts[1]}) listed twice")
        entries[(u, v)] = val
        entries[(v, u)] = val.conj()
    return SigningMatrix.from_entries(n, entries)


def format_certificate(cert: ParityCertificate, n: int) -> str:
    return "".join(" ".join(to_bitstring(v, n) for v in c.vertices) + "\n" for c in cert.cycles)


def parse_certificate(text: str, n: int) -> ParityCertificate:
    cycles = []
    for ln in _lines(text):
        parts = ln.split()
        if len(parts) != 4:
            raise FormatError(f"certificate line needs four vertices: {ln!r}")
        try:
            verts = [from_bitstring(p, n) for p in parts]
            cycle = FourCycle.from_vertices(*verts)
        except ValueError as exc:
            raise FormatError(str(exc)) from exc
        if cycle.vertices != tuple(verts):
            raise FormatError(f"cycle {ln!r} is not in canonical order")
        cycles.append(cycle)
    return ParityCertificate(tuple(cycles))


def format_labelling(f: EdgeLabelling, n: int) -> str:
    return "".join(
        f"{to_bitstring(u, n)} {to_bitstring(u ^ s, n)} {bit}\n" for (u, s), bit in sorted(f.bits.items())
    )


def parse_labelling(text: str, n: int) -> EdgeLabelling:
    bits = {}
    for ln in _lines(text):
        parts = ln.split()
        if len(parts) != 3 or parts[2] not in ("0", "1"):
            raise FormatError(f"bad labelling line {ln!r}")
        u, v = from_bitstring(parts[0], n), from_bitstring(parts[1], n)
        if u >= v:
            raise FormatError(f"edge {ln!r} must list the smaller endpoint first")
        bits[(u, u ^ v)] = int(parts[2])
    return EdgeLabelling(bits)
