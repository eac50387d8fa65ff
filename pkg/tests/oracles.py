"""Hand-written oracles for the three-dimensional family, typed in from the
reference tables and from expansions done by hand, independent of the library."""
from __future__ import annotations

from fractions import Fraction

import numpy as np


def nabla_table(a1, a2) -> np.ndarray:
    """Gamma[k, i, j] with nabla_{E_i} E_j = Gamma[k, i, j] E_k."""
    a1, a2 = Fraction(a1), Fraction(a2)
    G = np.array([[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)], dtype=object)
    G[1, 1, 0], G[2, 1, 0] = a1, a2  # nabla_{E1} E0 = a1 E1 + a2 E2
    G[1, 2, 0], G[2, 2, 0] = a2, -a1  # nabla_{E2} E0 = a2 E1 - a1 E2
    G[0, 1, 1] = -a1  # nabla_{E1} E1 = -a1 E0
    G[0, 2, 2] = a1  # nabla_{E2} E2 = a1 E0
    G[0, 1, 2] = G[0, 2, 1] = -a2  # nabla_{E1} E2 = nabla_{E2} E1 = -a2 E0
    return G


def F_table(a1, a2) -> np.ndarray:
    a1, a2 = Fraction(a1), Fraction(a2)
    F = np.array([[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)], dtype=object)
    for idx in ((1, 0, 1), (1, 1, 0), (2, 0, 2), (2, 2, 0)):
        F[idx] = -a2
    F[1, 0, 2] = F[1, 2, 0] = -a1
    F[2, 0, 1] = F[2, 1, 0] = a1
    return F


def g_tilde() -> np.ndarray:
    m = np.array([[Fraction(0)] * 3 for _ in range(3)], dtype=object)
    m[0, 0] = m[1, 2] = m[2, 1] = Fraction(1)
    return m


def tau(a1, a2) -> Fraction:
    # three plane curvatures: R(01,10) = R(02,20) = -(a1^2+a2^2), R(12,21) = a1^2+a2^2,
    # each counted twice in the double trace
    s = Fraction(a1) ** 2 + Fraction(a2) ** 2
    return 2 * (-s - s + s)


def rho_xi_xi(a1, a2) -> Fraction:
    s = Fraction(a1) ** 2 + Fraction(a2) ** 2
    return -2 * s
