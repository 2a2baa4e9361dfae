"""Unitary and orthogonal signings of Cayley graphs of Z_2^n, with exact verification."""

from .cayley import CubelikeGraph, FourCycle, hypercube, hypercube_plus
from .gf2 import GeneratorSet, E, e
from .orthosolve import EdgeLabelling, ParityCertificate, decide_orthogonal
from .pauli import PauliWord, SigningMatrix, construct_signing, verify_unitary_signing

__version__ = "0.1.0"

__all__ = [
    "CubelikeGraph",
    "E",
    "EdgeLabelling",
    "FourCycle",
    "GeneratorSet",
    "ParityCertificate",
    "PauliWord",
    "SigningMatrix",
    "construct_signing",
    "decide_orthogonal",
    "e",
    "hypercube",
    "hypercube_plus",
    "verify_unitary_signing",
]
