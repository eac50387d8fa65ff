"""The (2n+1)-dimensional Lie group family with ad(E_0) acting on E_1..E_2n."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .lie_frame import LieFrame
from .scalar_tensor import Tensor, identity, parse_scalar, zeros
from .structure import ApaprInstance, build_instance

__all__ = ["FamilyParams", "build_family", "family_frame", "canonical_structure", "proposition_table", "expected_class"]


@dataclass(frozen=True)
class FamilyParams:
    n: int
    a: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        a = tuple(parse_scalar(v) for v in self.a)
        if len(a) != 2 * self.n:
            raise ValueError(f"need exactly 2n = {2 * self.n} constants, got {len(a)}")
        object.__setattr__(self, "a", a)


def family_frame(params: FamilyParams) -> LieFrame:
    """[E_0,E_i] = -a_i E_i - a_{n+i} E_{n+i},  [E_0,E_{n+i}] = -a_{n+i} E_i + a_i E_{n+i}."""
    n, a = params.n, params.a
    c = zeros(2 * n + 1, 3)
    for i in range(1, n + 1):
        ai, ani = a[i - 1], a[n + i - 1]
        for target, coeffs in ((i, {i: -ai, n + i: -ani}), (n + i, {i: -ani, n + i: ai})):
            for k, v in coeffs.items():
                c[k, 0, target] += v
                c[k, target, 0] -= v
    return LieFrame(n, c)


def canonical_structure(n: int) -> tuple[Tensor, Tensor, Tensor, Tensor]:
    """phi E_i = E_{n+i}, phi E_{n+i} = E_i, xi = E_0, eta = E^0, g = identity."""
    dim = 2 * n + 1
    P = zeros(dim, 2)
    for i in range(1, n + 1):
        P[n + i, i] = Fraction(1)
        P[i, n + i] = Fraction(1)
    xi = np.array([Fraction(int(k == 0)) for k in range(dim)], dtype=object)
    return Tensor(P, 1, 1), Tensor(xi, 1, 0), Tensor(xi.copy(), 0, 1), Tensor(identity(dim), 0, 2)


def build_family(params: FamilyParams) -> ApaprInstance:
    frame = family_frame(params)
    return build_instance(frame, *canonical_structure(params.n))


def expected_class(a1, a2) -> str:
    """The four-case table for n = 1."""
    if a1 != 0 and a2 != 0:
        return "F4+F9"
    if a2 != 0:
        return "F4"
    if a1 != 0:
        return "F9"
    return "F0"


def proposition_table(grid: Sequence[tuple]) -> list[dict]:
    """Classify the n = 1 family at each (a1, a2) and compare with the table."""
    from .classify import classify_instance

    rows = []
    for a1, a2 in grid:
        params = FamilyParams(1, (a1, a2))
        membership = classify_instance(build_family(params))
        observed = "F0" if membership.f0 else "+".join(membership.classes)
        expected = expected_class(params.a[0], params.a[1])
        rows.append({"a": params.a, "expected": expected, "observed": observed, "match": expected == observed})
    return rows
