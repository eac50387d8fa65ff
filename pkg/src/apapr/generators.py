"""Seeded random instances for sweeps and property tests.

A base Lie algebra is written in a random rational basis, then carries the
canonical structure (phi swaps E_i and E_{n+i}, xi = E_0, g = identity).
Changing basis keeps Jacobi and moves the structure to a generic position
relative to the brackets, so every class component can appear.
"""
from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .family import FamilyParams, canonical_structure
from .lie_frame import LieFrame
from .scalar_tensor import _normalize, determinant, inverse_matrix, zeros
from .structure import ApaprInstance, build_instance

__all__ = ["BASE_KINDS", "base_algebra", "change_basis", "random_instance", "random_family_params"]

BASE_KINDS = ("semidirect", "heisenberg", "sl2", "so3")


def base_algebra(kind: str, n: int, rng: random.Random) -> np.ndarray:
    d = 2 * n + 1
    c = zeros(d, 3)

    def put(i, j, k, v):
        c[k, i, j] += v
        c[k, j, i] -= v

    if kind == "semidirect":
        # R acting on an abelian ideal span{E_1..E_2n} by a random matrix
        for i in range(1, d):
            for k in range(1, d):
                put(0, i, k, Fraction(rng.randint(-2, 2)))
    elif kind == "heisenberg":
        for i in range(1, n + 1):
            put(i, n + i, 0, Fraction(1))
    elif kind == "sl2":
        put(0, 1, 1, Fraction(2))
        put(0, 2, 2, Fraction(-2))
        put(1, 2, 0, Fraction(1))
    elif kind == "so3":
        put(0, 1, 2, Fraction(1))
        put(1, 2, 0, Fraction(1))
        put(2, 0, 1, Fraction(1))
    else:
        raise ValueError(f"unknown base algebra {kind!r}; choose from {BASE_KINDS}")
    return c


def change_basis(c: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Structure constants in the basis e'_i = B[a, i] e_a."""
    Binv = inverse_matrix(B)
    return _normalize(np.einsum("ai,bj,cab,kc->kij", B, B, c, Binv, optimize=True))


def random_instance(seed: int, n: int = 1, kind: str | None = None, rotate: bool = True) -> ApaprInstance:
    """``rotate=False`` keeps the base algebra's own basis (structured cases)."""
    rng = random.Random(seed)
    kind = kind or rng.choice(BASE_KINDS)
    d = 2 * n + 1
    c = base_algebra(kind, n, rng)
    if not rotate:
        return build_instance(LieFrame(n, c), *canonical_structure(n))
    while True:
        B = np.array([[Fraction(rng.randint(-2, 2)) for _ in range(d)] for _ in range(d)], dtype=object)
        if determinant(B) != 0:
            break
    return build_instance(LieFrame(n, change_basis(c, B)), *canonical_structure(n))


def random_family_params(seed: int, n: int = 2, bound: int = 3) -> FamilyParams:
    """Random rational a-vector with numerators and denominators up to ``bound``."""
    rng = random.Random(seed)
    a = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(2 * n)]
    return FamilyParams(n, tuple(a))
